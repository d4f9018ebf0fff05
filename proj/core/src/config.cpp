#include "pimvar/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pimvar {

std::string to_string(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Csv: return "csv";
  }
  return "text";
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format: " + s);
}

ch::Scheduler parse_scheduler(const std::string& s) {
  if (s == "macro") return ch::Scheduler::Macro;
  if (s == "micro") return ch::Scheduler::Micro;
  throw std::invalid_argument("unknown scheduler: " + s);
}

std::string to_string(ch::Scheduler s) { return s == ch::Scheduler::Micro ? "micro" : "macro"; }

ch::VerdictOptions Config::verdict_options() const {
  ch::VerdictOptions o;
  o.depth_bound = depth_bound;
  o.scheduler = scheduler;
  return o;
}

Config config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  Config c;
  try {
    if (j.contains("version") && j["version"].get<int>() != Config::kVersion)
      throw std::invalid_argument("config: unsupported version " + j["version"].dump());
    if (j.contains("corpus")) c.corpus = corpus::spec_from_json(j["corpus"].dump());
    if (j.contains("depthBound")) c.depth_bound = j["depthBound"].get<std::uint64_t>();
    if (j.contains("deadlockPolicy")) c.policy = classify::parse_policy(j["deadlockPolicy"].get<std::string>());
    if (j.contains("scheduler")) c.scheduler = parse_scheduler(j["scheduler"].get<std::string>());
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
    if (j.contains("jobs")) c.jobs = j["jobs"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (c.depth_bound == 0) throw std::invalid_argument("config: depthBound must be positive");
  if (c.jobs == 0) throw std::invalid_argument("config: jobs must be positive");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string to_json(const Config& c) {
  nlohmann::ordered_json j;
  j["version"] = Config::kVersion;
  j["corpus"] = nlohmann::ordered_json::parse(corpus::to_json(c.corpus));
  j["depthBound"] = c.depth_bound;
  j["deadlockPolicy"] = classify::to_string(c.policy);
  j["scheduler"] = to_string(c.scheduler);
  j["format"] = to_string(c.format);
  j["jobs"] = c.jobs;
  return j.dump(2);
}

}  // namespace pimvar
