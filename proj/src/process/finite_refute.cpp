#include <map>

#include "stdiff/error.hpp"
#include "stdiff/process/difference_property.hpp"

namespace stdiff::process {

using group::FiniteEndomorphism;
using nlohmann::json;

namespace {

// Depth-first search over Phi-sequences. Survival depends only on the
// Phi_n, so branches that reach the same Phi_{n+1} are merged.
struct RefuteSearch {
  const group::FiniteAbelianGroup& g;
  const std::vector<FiniteEndomorphism>& ends;
  std::map<FiniteEndomorphism, std::size_t> index;
  std::size_t limit;
  std::vector<std::size_t> phis;  // indices into ends
  std::vector<std::size_t> gens;
  FiniteRefutation* out;
  std::map<std::pair<std::size_t, std::size_t>, bool> surj_memo;

  bool difference_surjective(std::size_t a, std::size_t b) {
    auto key = a < b ? std::pair{a, b} : std::pair{b, a};
    auto it = surj_memo.find(key);
    if (it != surj_memo.end()) return it->second;
    const bool s = ends[a].minus(g, ends[b]).is_surjective(g);
    surj_memo.emplace(key, s);
    return s;
  }

  void visit() {
    ++out->nodes_explored;
    if (phis.size() > out->max_survival) {
      out->max_survival = phis.size();
      out->worst_sequence = gens;
    }
    if (phis.size() >= limit) return;
    std::map<std::size_t, std::size_t> next;  // Phi_{n+1} -> a generator reaching it
    for (std::size_t t = 0; t < ends.size(); ++t) {
      const FiniteEndomorphism candidate = phis.empty() ? ends[t] : ends[t].compose(g, ends[phis.back()]);
      next.emplace(index.at(candidate), t);
    }
    for (const auto& [phi, t] : next) {
      bool survives = true;
      for (std::size_t prev : phis)
        if (!difference_surjective(phi, prev)) {
          survives = false;
          break;
        }
      if (!survives) continue;
      phis.push_back(phi);
      gens.push_back(t);
      visit();
      phis.pop_back();
      gens.pop_back();
    }
  }
};

}  // namespace

FiniteRefutation finite_dp_refute(const group::FiniteAbelianGroup& g, std::size_t horizon,
                                  std::uint64_t endomorphism_cap) {
  if (g.size() <= 1) throw Error(Errc::out_of_range, "finite_dp_refute needs |A| > 1");
  const auto ends = group::enumerate_endomorphisms(g, endomorphism_cap);
  FiniteRefutation out;
  out.group = g.to_string();
  out.endomorphism_count = ends.size();
  out.horizon = horizon;

  RefuteSearch search{g, ends, {}, std::min<std::size_t>(horizon, ends.size() + 1), {}, {}, &out, {}};
  for (std::size_t i = 0; i < ends.size(); ++i) search.index.emplace(ends[i], i);
  search.visit();

  out.refuted_at = out.max_survival + 1;
  out.refuted = out.max_survival < search.limit;
  if (out.refuted) {
    out.reason = "every generator sequence violates the Difference Property by n = " +
                 std::to_string(out.refuted_at) + "; pigeonhole bound |End(A)| + 1 = " +
                 std::to_string(ends.size() + 1);
  } else {
    out.reason = "a sequence survived to the search horizon " + std::to_string(search.limit);
  }
  return out;
}

json FiniteRefutation::to_json() const {
  return json{{"group", group},
              {"endomorphism_count", endomorphism_count},
              {"horizon", horizon},
              {"refuted", refuted},
              {"refuted_at", refuted_at},
              {"max_survival", max_survival},
              {"nodes_explored", nodes_explored},
              {"worst_sequence", worst_sequence},
              {"reason", reason}};
}

}  // namespace stdiff::process
