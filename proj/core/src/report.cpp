#include "pimvar/report.hpp"

#include <sstream>

#include "json.hpp"

namespace pimvar::report {

namespace {

using ojson = nlohmann::ordered_json;

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

ojson verdict_json(const Verdict& v) { return ojson{{"may", v.may}, {"should", v.should}}; }

}  // namespace

std::string verdict(const Verdict& v, Format f) {
  switch (f) {
    case Format::Json: return verdict_json(v).dump() + "\n";
    case Format::Csv: return "may,should\n" + yn(v.may) + "," + yn(v.should) + "\n";
    case Format::Text: break;
  }
  return to_string(v) + "\n";
}

std::string ch_verdict(const ch::ChVerdict& v, Format f) {
  switch (f) {
    case Format::Json:
      return ojson{{"may", ch::to_string(v.may)},
                   {"should", ch::to_string(v.should)},
                   {"explored", v.explored},
                   {"depthBound", v.depth_bound}}
                 .dump() +
             "\n";
    case Format::Csv:
      return "may,should,explored\n" + ch::to_string(v.may) + "," + ch::to_string(v.should) + "," +
             std::to_string(v.explored) + "\n";
    case Format::Text: break;
  }
  return "may=" + ch::to_string(v.may) + " should=" + ch::to_string(v.should) + "\n";
}

std::string stats(const refute::SweepStats& s, Format f, bool timing) {
  switch (f) {
    case Format::Json: return refute::to_json(s, timing) + "\n";
    case Format::Csv: {
      std::ostringstream o;
      o << "survivor\n";
      for (const auto& t : s.survivors) o << csv_quote(gstb::print(t)) << "\n";
      return o.str();
    }
    case Format::Text: break;
  }
  return refute::to_text(s);
}

std::string table(const std::vector<refute::TableRow>& rows, Format f) {
  switch (f) {
    case Format::Json: {
      ojson j = ojson::array();
      for (const auto& r : rows)
        j.push_back({{"translation", gstb::print(r.translation)},
                     {"counterexample", pi::print(r.process)},
                     {"before", verdict_json(r.before)},
                     {"after", verdict_json(r.after)}});
      return j.dump(2) + "\n";
    }
    case Format::Csv: return refute::table_csv(rows);
    case Format::Text: break;
  }
  std::ostringstream o;
  for (const auto& r : rows)
    o << gstb::print(r.translation) << "  " << pi::print(r.process) << "  " << yn(r.before.may) << " "
      << yn(r.before.should) << " | " << yn(r.after.may) << " " << yn(r.after.should) << "\n";
  return o.str();
}

std::string counterexamples(const std::vector<refute::Counterexample>& cs, Format f) {
  switch (f) {
    case Format::Json: {
      ojson j = ojson::array();
      for (const auto& c : cs)
        j.push_back({{"translation", gstb::print(c.translation)},
                     {"process", pi::print(c.process)},
                     {"before", verdict_json(c.before)},
                     {"after", verdict_json(c.after)}});
      return j.dump(2) + "\n";
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "translation,process,may_before,should_before,may_after,should_after\n";
      for (const auto& c : cs)
        o << csv_quote(gstb::print(c.translation)) << "," << csv_quote(pi::print(c.process)) << ","
          << yn(c.before.may) << "," << yn(c.before.should) << "," << yn(c.after.may) << "," << yn(c.after.should)
          << "\n";
      return o.str();
    }
    case Format::Text: break;
  }
  std::ostringstream o;
  if (cs.empty()) o << "survives\n";
  for (const auto& c : cs)
    o << "refuted by " << pi::print(c.process) << ": before " << to_string(c.before) << ", after "
      << to_string(c.after) << "\n";
  return o.str();
}

std::string process_list(const std::vector<pi::ProcPtr>& ps, Format f) {
  std::ostringstream o;
  switch (f) {
    case Format::Json: {
      ojson j = ojson::array();
      for (const auto& p : ps) j.push_back(pi::print(p));
      return j.dump(2) + "\n";
    }
    case Format::Csv:
      o << "process\n";
      for (const auto& p : ps) o << csv_quote(pi::print(p)) << "\n";
      return o.str();
    case Format::Text: break;
  }
  for (const auto& p : ps) o << pi::print(p) << "\n";
  return o.str();
}

std::string differential(const refute::DifferentialReport& r, Format f) {
  switch (f) {
    case Format::Json: {
      ojson rows = ojson::array();
      for (const auto& row : r.rows)
        rows.push_back({{"process", pi::print(row.process)},
                        {"pi", verdict_json(row.before)},
                        {"ch", {{"may", ch::to_string(row.after.may)}, {"should", ch::to_string(row.after.should)}}},
                        {"status", refute::to_string(row.status)}});
      return ojson{{"rows", rows},
                   {"matches", r.matches},
                   {"mismatches", r.mismatches},
                   {"inconclusive", r.inconclusive}}
                 .dump(2) +
             "\n";
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "process,pi_may,pi_should,ch_may,ch_should,status\n";
      for (const auto& row : r.rows)
        o << csv_quote(pi::print(row.process)) << "," << yn(row.before.may) << "," << yn(row.before.should) << ","
          << ch::to_string(row.after.may) << "," << ch::to_string(row.after.should) << ","
          << refute::to_string(row.status) << "\n";
      return o.str();
    }
    case Format::Text: break;
  }
  return refute::to_text(r);
}

}  // namespace pimvar::report
