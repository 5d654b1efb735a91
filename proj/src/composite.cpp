#include "onto/composite.hpp"

#include <algorithm>
#include <stdexcept>

namespace onto {

namespace {

void require_sign(int v, const char* name) {
  if (v != 1 && v != -1) {
    throw std::invalid_argument(std::string("strategy: ") + name + " must be +1 or -1");
  }
}

}  // namespace

int strategy_mermin(const LocalStrategy& s) {
  require_sign(s.a0, "a0");
  require_sign(s.a1, "a1");
  require_sign(s.b0, "b0");
  require_sign(s.b1, "b1");
  require_sign(s.c0, "c0");
  require_sign(s.c1, "c1");
  return s.a0 * s.b0 * s.c1 + s.a0 * s.b1 * s.c0 + s.a1 * s.b0 * s.c0 -
         s.a1 * s.b1 * s.c1;
}

std::vector<LocalStrategy> all_strategies() {
  std::vector<LocalStrategy> out;
  out.reserve(64);
  for (unsigned bits = 0; bits < 64; ++bits) {
    const auto sign = [bits](unsigned k) { return (bits >> k) & 1u ? -1 : 1; };
    out.push_back(LocalStrategy{sign(0), sign(1), sign(2), sign(3), sign(4), sign(5)});
  }
  return out;
}

int local_mermin_max() {
  int best = -4;
  for (const auto& s : all_strategies()) best = std::max(best, strategy_mermin(s));
  return best;
}

int local_mermin_min() {
  int worst = 4;
  for (const auto& s : all_strategies()) worst = std::min(worst, strategy_mermin(s));
  return worst;
}

LocalStrategy induced_strategy(const LocalResponses& responses, const LocalTriple& t) {
  const auto& ra = responses.a.outcomes;
  const auto& rb = responses.b.outcomes;
  const auto& rc = responses.c.outcomes;
  if (t.a < 0 || t.a >= static_cast<int>(ra.size()) ||
      t.b < 0 || t.b >= static_cast<int>(rb.size()) ||
      t.c < 0 || t.c >= static_cast<int>(rc.size())) {
    throw std::out_of_range("induced_strategy: triple index outside response tables");
  }
  return LocalStrategy{ra[t.a][0], ra[t.a][1], rb[t.b][0],
                       rb[t.b][1], rc[t.c][0], rc[t.c][1]};
}

double composite_mermin(const CompositeOnticState& state,
                        const LocalResponses& responses,
                        const std::map<int, double>& nonlocal_values) {
  if (const auto* local = std::get_if<LocalTriple>(&state)) {
    return static_cast<double>(strategy_mermin(induced_strategy(responses, *local)));
  }
  const auto tag = std::get<NonlocalTag>(state).value;
  const auto it = nonlocal_values.find(tag);
  if (it == nonlocal_values.end()) {
    throw std::out_of_range("composite_mermin: unassigned nonlocal tag " +
                            std::to_string(tag));
  }
  if (it->second < -4.0 || it->second > 4.0) {
    throw std::invalid_argument("composite_mermin: nonlocal value outside [-4,4]");
  }
  return it->second;
}

std::size_t MachineDynamics::local_index(const LocalTriple& t) const {
  if (t.a < 0 || t.a >= na || t.b < 0 || t.b >= nb || t.c < 0 || t.c >= nc) {
    throw std::out_of_range("MachineDynamics: local triple outside the space");
  }
  return (static_cast<std::size_t>(t.a) * nb + t.b) * nc + t.c;
}

CompositeOnticState MachineDynamics::apply(const CompositeOnticState& in) const {
  if (const auto* local = std::get_if<LocalTriple>(&in)) {
    return local_out.at(local_index(*local));
  }
  const int tag = std::get<NonlocalTag>(in).value;
  if (tag < 0 || tag >= static_cast<int>(nonlocal_out.size())) {
    throw std::out_of_range("MachineDynamics: nonlocal tag outside the space");
  }
  return nonlocal_out[tag];
}

MachineDynamics MachineDynamics::identity(int na, int nb, int nc, int nonlocal_count) {
  if (na < 1 || nb < 1 || nc < 1 || nonlocal_count < 0) {
    throw std::invalid_argument("MachineDynamics: sector sizes must be positive");
  }
  MachineDynamics dyn;
  dyn.na = na;
  dyn.nb = nb;
  dyn.nc = nc;
  dyn.local_out.reserve(static_cast<std::size_t>(na) * nb * nc);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nc; ++c) dyn.local_out.push_back(LocalTriple{a, b, c});
  dyn.nonlocal_out.reserve(nonlocal_count);
  for (int t = 0; t < nonlocal_count; ++t) dyn.nonlocal_out.push_back(NonlocalTag{t});
  dyn.a_in_zero.assign(na, false);
  dyn.a_in_plus.assign(na, false);
  dyn.b_in_zero.assign(nb, false);
  dyn.c_in_zero.assign(nc, false);
  return dyn;
}

std::vector<GammaViolation> check_gamma(const MachineDynamics& dyn) {
  std::vector<GammaViolation> violations;
  for (int a = 0; a < dyn.na; ++a) {
    if (!dyn.a_in_zero[a]) continue;
    for (int b = 0; b < dyn.nb; ++b) {
      if (!dyn.b_in_zero[b]) continue;
      for (int c = 0; c < dyn.nc; ++c) {
        if (!dyn.c_in_zero[c]) continue;
        const LocalTriple in{a, b, c};
        const CompositeOnticState out = dyn.apply(in);
        const auto* local = std::get_if<LocalTriple>(&out);
        if (local == nullptr) {
          violations.push_back({in, "output is nonlocal"});
          continue;
        }
        if (!dyn.a_in_zero[local->a] || !dyn.b_in_zero[local->b] ||
            !dyn.c_in_zero[local->c]) {
          violations.push_back({in, "output component outside support(|0>)"});
        }
      }
    }
  }
  return violations;
}

MachineDynamics compose(const MachineDynamics& outer, const MachineDynamics& inner) {
  if (outer.na != inner.na || outer.nb != inner.nb || outer.nc != inner.nc ||
      outer.nonlocal_out.size() != inner.nonlocal_out.size()) {
    throw std::invalid_argument("compose: dynamics act on different spaces");
  }
  MachineDynamics dyn = inner;
  for (auto& out : dyn.local_out) out = outer.apply(out);
  for (auto& out : dyn.nonlocal_out) out = outer.apply(out);
  return dyn;
}

}  // namespace onto
