#pragma once

// Translations from pi processes into CH: the private-MVar translation, the
// translations induced by a send/receive sequence pair, and the abstract
// action-sequence encoding.

#include <string>
#include <vector>

#include "pimvar/abstract.hpp"
#include "pimvar/ch.hpp"
#include "pimvar/gstb.hpp"
#include "pimvar/pi.hpp"

namespace pimvar::translate {

struct Options {
  /// Expand `y <- newEmptyMVar` to `y <- newMVar bot; takeMVar y`.
  bool literal_empty_mvar = false;
};

/// Private-MVar translation. The name `stop` is left free.
ch::ExprPtr tau(const pi::ProcPtr& p, const Options& opt = {});
/// Like tau; a context hole translates to the CH hole.
ch::ExprPtr tau_context(const pi::ProcPtr& context, const Options& opt = {});
/// Initial state: the main thread creates `stop`, forks tau(p) and fills
/// `stop`. Free names of p are reported through `warnings`.
ch::ChState tau0(const pi::ProcPtr& p, const Options& opt = {}, std::vector<std::string>* warnings = nullptr);

ch::ExprPtr induced(const gstb::Translation& t, const pi::ProcPtr& p, const Options& opt = {});
ch::ChState induced0(const gstb::Translation& t, const pi::ProcPtr& p, const Options& opt = {},
                     std::vector<std::string>* warnings = nullptr);

/// One action sequence per thread of the flat normal form of p.
abs::Program to_abstract(const gstb::Translation& t, const pi::ProcPtr& p);
abs::Program to_abstract(const gstb::Translation& t, const pi::Soup& s);

/// Runnable Haskell text for tau0(p).
std::string haskell(const pi::ProcPtr& p);

}  // namespace pimvar::translate
