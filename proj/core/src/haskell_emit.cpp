#include "pimvar/translate.hpp"

namespace pimvar::translate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

class Emitter {
 public:
  std::string run(const pi::ProcPtr& p) {
    return std::visit(
        overloaded{
            [&](const pi::Out& o) {
              auto c = fresh("check");
              return "do { " + c + " <- newMVar () ; putMVar (unchan " + o.chan + ") (" + o.msg + ", " + c +
                     ") ; putMVar " + c + " () ; " + run(o.cont) + " }";
            },
            [&](const pi::In& i) {
              auto c = fresh("check");
              return "do { (" + i.binder + ", " + c + ") <- takeMVar (unchan " + i.chan + ") ; takeMVar " + c +
                     " ; " + run(i.cont) + " }";
            },
            [&](const pi::Par& q) { return "do { forkIO (" + run(q.right) + ") ; " + run(q.left) + " }"; },
            [&](const pi::Nu& n) {
              auto c = fresh("chan");
              return "do { " + c + " <- newEmptyMVar ; let { " + n.name + " = Chan " + c + " } ; " + run(n.body) +
                     " }";
            },
            [&](const pi::Nil&) { return std::string("return ()"); },
            [&](const pi::Stop&) { return std::string("takeMVar stop"); },
            [&](const pi::Repl& r) {
              auto f = fresh("f");
              return "let { " + f + " = do { forkIO (" + run(r.body) + ") ; " + f + " } } in " + f;
            },
            [&](const pi::Hole&) { return std::string("undefined"); },
        },
        p->node);
  }

 private:
  std::string fresh(const std::string& base) { return base + "'" + std::to_string(counter_++); }
  unsigned counter_ = 0;
};

}  // namespace

std::string haskell(const pi::ProcPtr& p) {
  std::string out =
      "import Control.Concurrent\n"
      "import Control.Concurrent.MVar\n"
      "\n"
      "data Channel = Chan (MVar (Channel, MVar ()))\n"
      "\n"
      "unchan :: Channel -> MVar (Channel, MVar ())\n"
      "unchan (Chan m) = m\n"
      "\n"
      "main :: IO ()\n";
  out += "main = do { stop <- newMVar () ; forkIO (" + Emitter().run(p) + ") ; putMVar stop () }\n";
  return out;
}

}  // namespace pimvar::translate
