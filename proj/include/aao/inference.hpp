#ifndef AAO_INFERENCE_HPP
#define AAO_INFERENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aao/model.hpp"
#include "aao/numeric.hpp"
#include "aao/oracle.hpp"
#include "aao/weighted.hpp"

namespace aao {

enum class Engine { Oracle, Weighted };

// matching/total as an exact reduced fraction. Throws ZeroSupportError
// when the evidence excludes every microstate.
Rational probability(const Query& query, const Geometry& geometry,
                     const Evidence& evidence, Engine engine = Engine::Weighted,
                     std::uint64_t size_guard = kDefaultSizeGuard);

struct JointRow {
    std::vector<int> states;  // one state index per scope node
    BigInt weight;
    Rational prob;
};

// One row per state tuple over the scope, in lexicographic alphabet
// order; probabilities sum to exactly 1.
struct JointTable {
    std::vector<std::string> scope;
    std::vector<JointRow> rows;
    BigInt total;

    const JointRow& row(const std::vector<std::string>& states,
                        const StateAlphabet& alphabet) const;
};

JointTable joint_table(const std::vector<std::string>& scope, const Geometry& geometry,
                       const Evidence& evidence, Engine engine = Engine::Weighted,
                       std::uint64_t size_guard = kDefaultSizeGuard);

// The per-geometry conditional object: one independently-normalized
// answer per candidate geometry, never aggregated. No prior over
// geometries exists in this model, so none is stored or accepted.
struct GeometryConditionalTable {
    std::vector<std::pair<std::string, Rational>> entries;

    const Rational& at(const std::string& geometry_name) const;
};

GeometryConditionalTable geometry_conditional(const Query& query,
                                              const std::vector<Geometry>& geometries,
                                              const Evidence& evidence,
                                              Engine engine = Engine::Weighted,
                                              std::uint64_t size_guard = kDefaultSizeGuard);

struct IndependenceReport {
    bool independent;
    GeometryConditionalTable table;
};

// independent = true iff every per-geometry answer is the same exact
// rational. A false result is the model's rebuttal to demanding a
// geometry-independent answer.
IndependenceReport independence_check(const Query& query,
                                      const std::vector<Geometry>& geometries,
                                      const Evidence& evidence,
                                      Engine engine = Engine::Weighted,
                                      std::uint64_t size_guard = kDefaultSizeGuard);

// Posterior color distribution for every edge given the evidence.
struct EdgeColorPosterior {
    int edge;
    std::vector<Rational> color_probs;  // canonical color order
};

std::vector<EdgeColorPosterior> deduce_colors(const Geometry& geometry,
                                              const Evidence& evidence,
                                              Engine engine = Engine::Weighted,
                                              std::uint64_t size_guard = kDefaultSizeGuard);

// The explicit classical information state: an equal-weight (then
// conditioned) probability per enumerated microstate. Oracle scale only.
struct ClassicalInfoState {
    std::vector<Microstate> microstates;
    std::vector<Rational> probs;  // parallel to microstates, sums to 1
};

ClassicalInfoState info_state(const Geometry& geometry, const Evidence& evidence,
                              std::uint64_t size_guard = kDefaultSizeGuard);

// A sequential learning session over a set of candidate geometries. The
// posterior depends only on the SET of learned atoms: every query
// recomputes from the set, so learning order can never matter.
class UpdateSession {
public:
    explicit UpdateSession(std::vector<Geometry> geometries,
                           Evidence initial = Evidence(),
                           std::uint64_t size_guard = kDefaultSizeGuard);

    // Throws ContradictionError on a clash with prior atoms and
    // ZeroSupportError if the atom would exclude every microstate; in
    // both cases the session is unchanged. Re-learning an atom is a no-op.
    void learn(EvidenceAtom atom);

    // Known geometry required; throws ModelError while it is still open.
    Rational query(const Query& q, Engine engine = Engine::Weighted) const;
    // Per-geometry answers while the geometry is unknown (also valid
    // after collapse, with a single entry).
    GeometryConditionalTable query_conditional(const Query& q,
                                               Engine engine = Engine::Weighted) const;
    JointTable table(const std::vector<std::string>& scope,
                     Engine engine = Engine::Weighted) const;

    bool geometry_known() const;
    const Geometry& active_geometry() const;
    const std::vector<Geometry>& geometries() const { return geometries_; }
    // Ordered log of learned atoms; bookkeeping only, never semantics.
    const std::vector<EvidenceAtom>& log() const { return log_; }
    const Evidence& learned() const { return learned_; }

    void reset();

private:
    std::vector<Geometry> geometries_;
    Evidence initial_;
    Evidence learned_;
    std::vector<EvidenceAtom> log_;
    std::uint64_t size_guard_;

    std::vector<const Geometry*> candidates() const;
};

}  // namespace aao

#endif
