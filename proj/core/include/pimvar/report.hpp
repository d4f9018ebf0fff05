#pragma once

// Byte-stable renderings of module results in text, JSON and CSV.

#include <string>
#include <vector>

#include "pimvar/config.hpp"
#include "pimvar/refute.hpp"

namespace pimvar::report {

std::string verdict(const Verdict& v, Format f);
std::string ch_verdict(const ch::ChVerdict& v, Format f);
/// Wall time is omitted in JSON when `timing` is false.
std::string stats(const refute::SweepStats& s, Format f, bool timing = false);
std::string table(const std::vector<refute::TableRow>& rows, Format f);
std::string counterexamples(const std::vector<refute::Counterexample>& cs, Format f);
std::string process_list(const std::vector<pi::ProcPtr>& ps, Format f);
std::string differential(const refute::DifferentialReport& r, Format f);

}  // namespace pimvar::report
