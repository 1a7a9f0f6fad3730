#include "pcgs/derivation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace pcgs {

namespace {

void check_shape(const PCGSystem& system, const Configuration& config) {
  if (config.strings.size() != system.components.size()) {
    throw std::invalid_argument("configuration shape does not match system");
  }
}

// Production indices of one component grouped by left-hand side.
using LhsIndex = std::unordered_map<SymbolId, std::vector<std::uint32_t>>;

std::vector<LhsIndex> build_lhs_indices(const PCGSystem& system) {
  std::vector<LhsIndex> out(system.components.size());
  for (std::size_t ci = 0; ci < system.components.size(); ++ci) {
    const auto& prods = system.components[ci].productions;
    for (std::uint32_t pi = 0; pi < prods.size(); ++pi) out[ci][prods[pi].lhs].push_back(pi);
  }
  return out;
}

// Marks components whose query symbol occurs in no right-hand side and no
// axiom. Delivered strings are always query-free, so queries only ever enter
// a configuration through axioms and right-hand sides; a component marked
// here can never be queried and its string is invisible to the others.
std::vector<bool> never_queried(const PCGSystem& system) {
  std::vector<bool> out(system.components.size(), true);
  auto scan = [&](const Word& w) {
    for (SymbolId s : w) {
      if (system.symbols.is_query(s)) out[system.symbols.query_component(s)] = false;
    }
  };
  for (const auto& comp : system.components) {
    scan(comp.axiom);
    for (const Production& p : comp.productions) scan(p.rhs);
  }
  return out;
}

// One-step rewrites of `word` in canonical order (position ascending, then
// production index ascending), deduplicated keeping first occurrences.
// Returns false when the word holds a nonterminal but no production applies.
//
// `collapse_erasures` must only be set for components that can never be
// queried. When every applicable production erases its occurrence, only the
// leftmost erasure is kept: the orders all commute, reach the same fully
// erased string in the same number of steps, and no intermediate string is
// terminal-only, so with the string invisible to the other components the
// enumerated words are unchanged while the factorial orders disappear.
bool component_options(const SymbolTable& t, const Word& word, const std::vector<Production>& prods,
                       const LhsIndex& index, bool leftmost_only, bool collapse_erasures, std::vector<Word>& out) {
  out.clear();
  if (terminal_only(t, word)) {
    out.push_back(word);
    return true;
  }
  bool all_erasing = true;
  std::size_t first_count = 0;
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    if (!t.is_nonterminal(word[pos])) continue;
    auto it = index.find(word[pos]);
    if (it == index.end()) continue;
    for (std::uint32_t pi : it->second) {
      const Word& rhs = prods[pi].rhs;
      if (!rhs.empty()) all_erasing = false;
      Word next;
      next.reserve(word.size() - 1 + rhs.size());
      next.insert(next.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
      next.insert(next.end(), rhs.begin(), rhs.end());
      next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(pos) + 1, word.end());
      if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(std::move(next));
    }
    if (first_count == 0) first_count = out.size();
    if (leftmost_only && !out.empty()) return true;
  }
  if (collapse_erasures && all_erasing && first_count > 0) out.resize(first_count);
  return !out.empty();
}

using Seen = std::unordered_set<Fingerprint, FingerprintHash>;

// Decides whether a configuration of a non-returning system can still reach
// a terminal-only master, over-approximately. `gt` collects the symbols the
// master could eliminate from its own string: terminals count, a nonterminal
// counts once some master production maps it into counted symbols, and a
// query counts once every symbol the queried component currently holds could
// be shipped to the master and eliminated there. The per-sender shipping set
// extends `gt` by the sender's own productions, with queries the sender
// holds treated as answerable by the best possible delivery. Every clause is
// optimistic, so a master string not covered by `gt` proves that no future
// of the configuration yields a word, and cutting it is safe. Results are
// memoized on the per-component symbol sets, which repeat massively across
// configurations that differ only in arrangement or multiplicity.
class DoomAnalyzer {
 public:
  explicit DoomAnalyzer(const PCGSystem& system) : system_(system) {}

  bool doomed(const Configuration& c) {
    const std::size_t n = system_.components.size();
    std::vector<std::vector<SymbolId>> support(n);
    std::string key;
    for (std::size_t i = 0; i < n; ++i) {
      support[i].assign(c.strings[i].begin(), c.strings[i].end());
      std::sort(support[i].begin(), support[i].end());
      support[i].erase(std::unique(support[i].begin(), support[i].end()), support[i].end());
      for (SymbolId s : support[i]) {
        for (int b = 0; b < 32; b += 8) key.push_back(static_cast<char>((s >> b) & 0xff));
      }
      key.push_back('\xff');
      key.push_back('\xff');
      key.push_back('\xff');
      key.push_back('\xff');
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const bool result = compute(support);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  bool compute(const std::vector<std::vector<SymbolId>>& support) const {
    const SymbolTable& t = system_.symbols;
    const std::size_t n = system_.components.size();
    std::vector<char> gt(t.size(), 0);
    std::vector<std::vector<char>> del(n, std::vector<char>(t.size(), 0));
    std::vector<char> qgood(n, 0);
    auto in_gt = [&](SymbolId s) {
      if (t.is_terminal(s)) return true;
      if (t.is_query(s)) return qgood[t.query_component(s)] != 0;
      return gt[s] != 0;
    };
    auto in_del = [&](std::size_t j, SymbolId s) { return t.is_query(s) || del[j][s] != 0 || in_gt(s); };
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (qgood[j]) continue;
        bool ok = true;
        for (SymbolId s : support[j]) {
          if (!in_del(j, s)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          qgood[j] = 1;
          changed = true;
        }
      }
      for (const Production& p : system_.components[system_.master].productions) {
        if (gt[p.lhs]) continue;
        bool ok = true;
        for (SymbolId s : p.rhs) {
          if (!in_gt(s)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          gt[p.lhs] = 1;
          changed = true;
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (const Production& p : system_.components[j].productions) {
          if (del[j][p.lhs] != 0 || in_gt(p.lhs)) continue;
          bool ok = true;
          for (SymbolId s : p.rhs) {
            if (!in_del(j, s)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            del[j][p.lhs] = 1;
            changed = true;
          }
        }
      }
    }
    for (SymbolId s : support[system_.master]) {
      if (!in_gt(s)) return true;
    }
    return false;
  }

  const PCGSystem& system_;
  std::unordered_map<std::string, bool> memo_;
};

struct Expansion {
  std::vector<Fingerprint> fps;           // aligned with successors when `seen` was given
  std::vector<Configuration> successors;  // canonical order
  bool blocked = false;
  bool truncated = false;
};

// Per-component option lists are deduplicated, so the Cartesian product
// contains no duplicate configurations. Component 0 is the slowest-varying
// digit of the product. When `seen` is given it is read (never written) and
// successors already contained in it are dropped as they are produced.
Expansion expand_rewriting(const PCGSystem& system, const Configuration& config,
                           const std::vector<LhsIndex>& indices, const std::vector<bool>& collapse,
                           const DerivationOptions& options, std::size_t cap, const Seen* seen) {
  Expansion e;
  const std::size_t n = config.strings.size();
  std::vector<std::vector<Word>> opts(n);
  for (std::size_t ci = 0; ci < n; ++ci) {
    if (!component_options(system.symbols, config.strings[ci], system.components[ci].productions, indices[ci],
                           options.leftmost_only, collapse[ci], opts[ci])) {
      e.blocked = true;
      return e;
    }
  }
  std::vector<std::size_t> digit(n, 0);
  std::size_t produced = 0;
  while (true) {
    if (produced >= cap) {
      e.truncated = true;
      return e;
    }
    ++produced;
    Configuration succ;
    succ.strings.reserve(n);
    for (std::size_t ci = 0; ci < n; ++ci) succ.strings.push_back(opts[ci][digit[ci]]);
    if (seen != nullptr) {
      const Fingerprint fp = fingerprint(succ);
      if (seen->find(fp) == seen->end()) {
        e.fps.push_back(fp);
        e.successors.push_back(std::move(succ));
      }
    } else {
      e.successors.push_back(std::move(succ));
    }
    std::size_t ci = n;
    while (ci > 0) {
      --ci;
      if (++digit[ci] < opts[ci].size()) break;
      digit[ci] = 0;
      if (ci == 0) return e;
    }
  }
}

Expansion expand_one(const PCGSystem& system, const Configuration& config, const std::vector<LhsIndex>& indices,
                     const std::vector<bool>& collapse, const DerivationOptions& options, std::size_t cap,
                     const Seen* seen) {
  Expansion e;
  switch (classify(system, config)) {
    case StepKind::kFinal:
      break;
    case StepKind::kCommunication: {
      auto next = communication_step(system, config);
      if (!next) {
        e.blocked = true;
      } else if (seen != nullptr) {
        const Fingerprint fp = fingerprint(*next);
        if (seen->find(fp) == seen->end()) {
          e.fps.push_back(fp);
          e.successors.push_back(std::move(*next));
        }
      } else {
        e.successors.push_back(std::move(*next));
      }
      break;
    }
    case StepKind::kRewriting:
      e = expand_rewriting(system, config, indices, collapse, options, cap, seen);
      break;
    case StepKind::kBlocked:
      break;
  }
  return e;
}

}  // namespace

StepKind classify(const PCGSystem& system, const Configuration& config) {
  check_shape(system, config);
  bool any_query = false;
  bool all_terminal = true;
  for (const Word& w : config.strings) {
    for (SymbolId s : w) {
      if (system.symbols.is_query(s)) any_query = true;
      if (!system.symbols.is_terminal(s)) all_terminal = false;
    }
  }
  if (all_terminal) return StepKind::kFinal;
  if (any_query) return StepKind::kCommunication;
  return StepKind::kRewriting;
}

std::optional<Configuration> communication_step(const PCGSystem& system, const Configuration& config) {
  check_shape(system, config);
  const SymbolTable& t = system.symbols;
  const std::size_t n = config.strings.size();

  std::vector<bool> satisfied(n, false);
  bool any_query = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_query(t, config.strings[i])) continue;
    any_query = true;
    bool sat = true;
    for (SymbolId s : config.strings[i]) {
      if (t.is_query(s) && has_query(t, config.strings[t.query_component(s)])) {
        sat = false;
        break;
      }
    }
    satisfied[i] = sat;
  }
  if (!any_query) throw std::invalid_argument("communication step requires a query symbol");

  Configuration out = config;
  std::vector<bool> delivered(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!satisfied[i]) continue;
    Word y;
    for (SymbolId s : config.strings[i]) {
      if (t.is_query(s)) {
        const std::uint32_t j = t.query_component(s);
        y.insert(y.end(), config.strings[j].begin(), config.strings[j].end());
        delivered[j] = true;
      } else {
        y.push_back(s);
      }
    }
    out.strings[i] = std::move(y);
  }
  if (system.mode == Mode::kReturning) {
    for (std::size_t j = 0; j < n; ++j) {
      if (delivered[j]) out.strings[j] = system.components[j].axiom;
    }
  }
  if (out == config) return std::nullopt;
  return out;
}

std::optional<std::vector<Configuration>> rewriting_successors(const PCGSystem& system, const Configuration& config,
                                                               const DerivationOptions& options) {
  check_shape(system, config);
  auto indices = build_lhs_indices(system);
  const std::vector<bool> no_collapse(system.components.size(), false);
  Expansion e = expand_rewriting(system, config, indices, no_collapse, options, kUnbounded, nullptr);
  if (e.blocked) return std::nullopt;
  return std::move(e.successors);
}

EnumerationResult enumerate_language(const PCGSystem& system, const EnumerationBounds& bounds, unsigned workers,
                                     const DerivationOptions& options) {
  const SymbolTable& t = system.symbols;
  const auto indices = build_lhs_indices(system);
  const std::vector<bool> collapse = never_queried(system);
  const std::size_t cap = bounds.max_configurations == kUnbounded ? kUnbounded : bounds.max_configurations + 1;

  EnumerationResult result;
  bool exhausted = true;
  bool stop = false;
  Seen visited;
  std::set<Word> words;
  std::vector<Configuration> frontier;
  std::vector<Configuration> incoming;

  DoomAnalyzer doom(system);
  auto master_dead = [&](const Configuration& c) {
    return system.mode == Mode::kNonReturning && doom.doomed(c);
  };

  auto admit = [&](const Fingerprint& fp, Configuration&& c) {
    if (stop) return;
    if (bounds.max_string_length != kUnbounded) {
      for (const Word& w : c.strings) {
        if (w.size() > bounds.max_string_length) {
          ++result.stats.pruned_length;
          exhausted = false;
          return;
        }
      }
    }
    if (bounds.max_master_terminals != kUnbounded &&
        count_terminals(t, c.strings[system.master]) > bounds.max_master_terminals) {
      ++result.stats.pruned_master;
      // Terminals never leave the master in non-returning mode, so this cut
      // cannot hide any word short enough to survive it; in returning mode
      // the master can reset and the cut is a real budget.
      if (system.mode == Mode::kReturning) exhausted = false;
      return;
    }
    if (master_dead(c)) {
      ++result.stats.pruned_dead;
      return;
    }
    if (!visited.insert(fp).second) return;
    if (visited.size() > bounds.max_configurations) {
      exhausted = false;
      stop = true;
      return;
    }
    ++result.stats.visited;
    if (terminal_only(t, c.strings[system.master])) words.insert(c.strings[system.master]);
    incoming.push_back(std::move(c));
  };

  {
    Configuration init = initial_configuration(system);
    const Fingerprint fp = fingerprint(init);
    admit(fp, std::move(init));
  }
  frontier = std::move(incoming);
  incoming = {};

  const unsigned w = workers == 0 ? 1u : workers;
  // Layers expand and merge in fixed-size blocks so at most one block of
  // successor lists is alive at a time; consumed inputs are freed as merged.
  constexpr std::size_t kBlock = 2048;
  std::size_t depth = 0;
  while (!frontier.empty() && !stop) {
    const bool at_cut = depth >= bounds.max_depth;
    for (std::size_t base = 0; base < frontier.size() && !stop; base += kBlock) {
      const std::size_t end = std::min(frontier.size(), base + kBlock);
      std::vector<Expansion> expansions(end - base);
      // `visited` is only read while a block expands; admission below is the
      // sole writer and runs between blocks, so the visible behaviour does
      // not depend on the worker count.
      unsigned used = w;
      if (static_cast<std::size_t>(used) > end - base) used = static_cast<unsigned>(end - base);
      if (used <= 1) {
        for (std::size_t i = base; i < end; ++i) {
          expansions[i - base] = expand_one(system, frontier[i], indices, collapse, options, cap, &visited);
        }
      } else {
        const std::size_t chunk = (end - base + used - 1) / used;
        std::vector<std::thread> pool;
        pool.reserve(used);
        for (unsigned wi = 0; wi < used; ++wi) {
          const std::size_t lo = base + wi * chunk;
          const std::size_t hi = std::min(end, lo + chunk);
          pool.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i) {
              expansions[i - base] = expand_one(system, frontier[i], indices, collapse, options, cap, &visited);
            }
          });
        }
        for (auto& th : pool) th.join();
      }
      for (std::size_t i = base; i < end && !stop; ++i) {
        Expansion& e = expansions[i - base];
        if (e.blocked) ++result.stats.blocked;
        if (e.truncated) exhausted = false;
        if (at_cut) {
          // The layer at the depth bound is not expanded; exhaustion survives
          // only if every successor would have been rejected anyway.
          for (std::size_t k = 0; k < e.successors.size(); ++k) {
            bool harmless = visited.find(e.fps[k]) != visited.end();
            if (!harmless && system.mode == Mode::kNonReturning && bounds.max_master_terminals != kUnbounded &&
                count_terminals(t, e.successors[k].strings[system.master]) > bounds.max_master_terminals) {
              harmless = true;
            }
            if (!harmless) harmless = master_dead(e.successors[k]);
            if (!harmless) {
              exhausted = false;
              break;
            }
          }
        } else {
          for (std::size_t k = 0; k < e.successors.size(); ++k) {
            admit(e.fps[k], std::move(e.successors[k]));
            if (stop) break;
          }
        }
        frontier[i] = Configuration{};
      }
    }
    if (at_cut) break;
    frontier = std::move(incoming);
    incoming = {};
    ++depth;
  }

  result.words.assign(words.begin(), words.end());
  std::stable_sort(result.words.begin(), result.words.end(), [&](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return t.name(a[i]) < t.name(b[i]);
    }
    return false;
  });
  result.exhausted = exhausted;
  return result;
}

std::vector<Configuration> replay_trace(const PCGSystem& system, const std::vector<std::size_t>& choices) {
  std::vector<Configuration> trace;
  trace.push_back(initial_configuration(system));
  for (std::size_t idx : choices) {
    const Configuration& cur = trace.back();
    switch (classify(system, cur)) {
      case StepKind::kFinal:
        throw std::out_of_range("no such successor");
      case StepKind::kCommunication: {
        auto next = communication_step(system, cur);
        if (!next) throw std::runtime_error("blocked step");
        if (idx != 0) throw std::out_of_range("no such successor");
        trace.push_back(std::move(*next));
        break;
      }
      case StepKind::kRewriting: {
        auto succ = rewriting_successors(system, cur);
        if (!succ) throw std::runtime_error("blocked step");
        if (idx >= succ->size()) throw std::out_of_range("no such successor");
        trace.push_back(std::move((*succ)[idx]));
        break;
      }
      case StepKind::kBlocked:
        break;
    }
  }
  return trace;
}

}  // namespace pcgs
