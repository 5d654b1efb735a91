#pragma once

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace onto {

/// Composite ontic state of a three-party system: either a decomposable
/// triple of per-party ontic indices, or an opaque element of the nonlocal
/// sector (no triple decomposition exists by definition).
struct LocalTriple {
  int a = 0, b = 0, c = 0;
  bool operator==(const LocalTriple&) const = default;
};

struct NonlocalTag {
  int value = 0;
  bool operator==(const NonlocalTag&) const = default;
};

using CompositeOnticState = std::variant<LocalTriple, NonlocalTag>;

/// Deterministic +-1 outcomes for the six local settings.
struct LocalStrategy {
  int a0 = 1, a1 = 1, b0 = 1, b1 = 1, c0 = 1, c1 = 1;
  bool operator==(const LocalStrategy&) const = default;
};

/// a0 b0 c1 + a0 b1 c0 + a1 b0 c0 - a1 b1 c1 (integer arithmetic).
int strategy_mermin(const LocalStrategy& s);

/// All 64 deterministic strategies, bit-enumerated.
std::vector<LocalStrategy> all_strategies();

int local_mermin_max();  // 2, by exhaustive enumeration
int local_mermin_min();  // -2

/// Deterministic outcomes per local ontic point: outcomes[i][k] is the +-1
/// result of setting k at point i.
struct PartyResponses {
  std::vector<std::array<int, 2>> outcomes;
};

struct LocalResponses {
  PartyResponses a, b, c;
};

/// Strategy induced on a local triple by the per-party response tables.
LocalStrategy induced_strategy(const LocalResponses& responses, const LocalTriple& t);

/// Mermin value of a composite ontic state. Local states evaluate through
/// their induced strategy (hence land in {-2,+2}); nonlocal states carry an
/// externally assigned value in [-4,4]. Unassigned tags are a hard error.
double composite_mermin(const CompositeOnticState& state,
                        const LocalResponses& responses,
                        const std::map<int, double>& nonlocal_values);

/// Finite ontic dynamics of the copy machine over a composite space with
/// per-party local sectors of sizes na, nb, nc and a tagged nonlocal sector.
/// Metadata marks which per-party indices belong to the supports of |0> and
/// (for party A) of |+>.
struct MachineDynamics {
  int na = 0, nb = 0, nc = 0;
  std::vector<CompositeOnticState> local_out;     // flattened (a*nb + b)*nc + c
  std::vector<CompositeOnticState> nonlocal_out;  // dynamics on nonlocal inputs
  std::vector<bool> a_in_zero, a_in_plus;
  std::vector<bool> b_in_zero, c_in_zero;

  std::size_t local_index(const LocalTriple& t) const;
  CompositeOnticState apply(const CompositeOnticState& in) const;

  /// Identity dynamics over the given sector sizes, with empty support marks.
  static MachineDynamics identity(int na, int nb, int nc, int nonlocal_count);
};

struct GammaViolation {
  LocalTriple input;
  std::string reason;
};

/// Constraint check: every local input with lambda_A in support(|0>) (and
/// B, C fed from support of the reference state |0>) must map to a local
/// output whose three components lie in the respective |0> supports.
/// Violations are data, not errors.
std::vector<GammaViolation> check_gamma(const MachineDynamics& dyn);

/// outer after inner,  sharing inner's input metadata.
MachineDynamics compose(const MachineDynamics& outer, const MachineDynamics& inner);

}  // namespace onto
