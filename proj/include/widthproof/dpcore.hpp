#ifndef WIDTHPROOF_DPCORE_HPP
#define WIDTHPROOF_DPCORE_HPP

#include <chrono>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "widthproof/bits.hpp"
#include "widthproof/term.hpp"

namespace widthproof {

/// Finite set of local witnesses, kept sorted by canonical encoding so that
/// set equality is byte equality and iteration order is deterministic.
class WitnessSet {
public:
    WitnessSet() = default;
    static WitnessSet of(std::vector<BitString> elems);

    void insert(BitString w);
    bool contains(const BitString& w) const;

    std::span<const BitString> elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    bool operator==(const WitnessSet&) const = default;

    /// Canonical serialization: element count, then each element as a bit
    /// length followed by its bits. Used for visited-set keys and dumps.
    BitString serialize() const;
    static WitnessSet deserialize(BitReader& in);

private:
    std::vector<BitString> elems_;
};

/// Invariant value for an empty witness set; compares unequal to every
/// integer-valued invariant.
inline BitString undefined_invariant() { return BitString{}; }

/// One dynamic-programming core: a witness domain with finality, leaf sets,
/// per-symbol transitions, a redundancy-removing clean, and an invariant.
/// Instances are immutable and uniform in the width parameter k, which is
/// passed to every call.
///
/// Contracts assumed by the engine and checked by tests where feasible:
///  - encodings are injective on the witness domain;
///  - clean(clean(S)) == clean(S), and replacing clean by plain dedup never
///    changes acceptance or invariant of any downstream dynamization;
///  - all member functions are pure.
class DPCore {
public:
    virtual ~DPCore() = default;

    virtual std::string name() const = 0;

    /// True when witness bitlength is bounded by a function of k alone, a
    /// precondition for the exhaustive inclusion test to terminate.
    virtual bool is_finite() const = 0;

    /// Membership test for the witness domain at width k.
    virtual bool is_witness(int k, const BitString& w) const = 0;

    virtual bool is_final(int k, const BitString& w) const = 0;

    /// Witness set for an arity-0 symbol.
    virtual WitnessSet leaf_set(int k, const Symbol& symbol) const = 0;

    /// Witness-level transition for a symbol of arity >= 1.
    virtual WitnessSet transition(int k, const Symbol& symbol,
                                  std::span<const BitString> below) const = 0;

    /// Removes redundant witnesses. Default: canonical dedup only.
    virtual WitnessSet clean(int, WitnessSet s) const { return s; }

    /// Invariant of a witness set; undefined_invariant() on the empty set.
    virtual BitString invariant(int k, const WitnessSet& s) const;
};

using CorePtr = std::shared_ptr<const DPCore>;

bool has_final_witness(const DPCore& core, int k, const WitnessSet& s);

/// Set-level transition: clean of the union of per-tuple transitions over
/// the Cartesian product of the child sets (or of the leaf set at arity 0).
/// Throws StructuralError for symbols outside the width-k alphabet.
WitnessSet step(const DPCore& core, int k, const Symbol& symbol,
                std::span<const WitnessSet> children);

/// Runtime guard for the internally-polynomial discipline: a step call
/// exceeding the budget throws std::runtime_error. Zero disables the guard
/// (the default is 10s per call).
void set_step_time_budget(std::chrono::milliseconds budget);

/// Memo table for dynamizations over shared subterms.
using DynamizeMemo = std::unordered_map<const void*, WitnessSet>;

/// Bottom-up fold of step over the term.
WitnessSet dynamize(const DPCore& core, int k, const Term& t, DynamizeMemo* memo = nullptr);

bool accepts(const DPCore& core, int k, const Term& t, DynamizeMemo* memo = nullptr);

struct ModelCheckResult {
    bool accepted = false;
    BitString invariant;
};

/// Acceptance plus invariant of the root witness set. Requires a valid
/// width-k term (throws TermValidationError otherwise).
ModelCheckResult model_check(const DPCore& core, int k, const Term& t,
                             DynamizeMemo* memo = nullptr);

/// Empirical size measures over all valid width-k terms of size <= n:
/// beta = max witness bits, mu = max set cardinality, nu = distinct
/// witnesses, delta = distinct sets.
struct ComplexityReport {
    int k = 0;
    int n = 0;
    std::size_t term_count = 0;
    std::size_t beta = 0;
    std::size_t mu = 0;
    std::size_t nu = 0;
    std::size_t delta = 0;

    /// mu <= nu <= 2^beta and delta <= min(2 nu^mu, 2^nu).
    bool inequalities_hold() const;
};

ComplexityReport measure_complexity(const DPCore& core, int k, int n,
                                    std::size_t max_terms = 2'000'000);

/// Bit length of one witness's canonical encoding.
std::size_t witness_bitlength(const BitString& w);

/// Stream header (core name, k) plus WitnessSet::serialize, for caching and
/// refutation dumps.
BitString serialize_witness_set(const DPCore& core, int k, const WitnessSet& s);

/// Wraps a core with clean replaced by plain dedup; used to verify the
/// clean-soundness contract.
CorePtr with_trivial_clean(CorePtr core);

}  // namespace widthproof

#endif
