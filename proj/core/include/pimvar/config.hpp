#pragma once

// Run configuration shared by the command-line verbs.

#include <cstdint>
#include <string>

#include "pimvar/ch.hpp"
#include "pimvar/classify.hpp"
#include "pimvar/corpus.hpp"

namespace pimvar {

enum class Format : std::uint8_t { Text, Json, Csv };
std::string to_string(Format f);
/// Throws std::invalid_argument.
Format parse_format(const std::string& s);
ch::Scheduler parse_scheduler(const std::string& s);
std::string to_string(ch::Scheduler s);

struct Config {
  static constexpr int kVersion = 1;

  corpus::CorpusSpec corpus;
  std::uint64_t depth_bound = 100000;
  classify::DeadlockPolicy policy = classify::DeadlockPolicy::Violation;
  ch::Scheduler scheduler = ch::Scheduler::Macro;
  Format format = Format::Text;
  unsigned jobs = 1;

  ch::VerdictOptions verdict_options() const;
};

/// {"version":1,"corpus":{...},"depthBound":n,"deadlockPolicy":"violation",
///  "scheduler":"macro","format":"text","jobs":1}; missing keys keep their
/// defaults. Throws std::invalid_argument.
Config config_from_json(const std::string& text);
Config load_config(const std::string& path);
std::string to_json(const Config& c);

}  // namespace pimvar
