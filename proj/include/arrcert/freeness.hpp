#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrcert/arrangement.hpp"
#include "arrcert/lattice.hpp"
#include "arrcert/multi.hpp"

namespace arrcert {

using json = nlohmann::json;

enum class Verdict { Free, NotFree, Undecided };

std::string verdict_str(Verdict v);

/// Result of a certification rule: a verdict about one arrangement together
/// with a replayable tree of inference steps. Each node records the rule id,
/// the subject's canonical key, the parameters needed to re-execute the rule,
/// derived numeric data, and sub-certificates as children.
struct Certificate {
  Verdict verdict = Verdict::Undecided;
  std::string subject;         // canonical arrangement key
  std::vector<Int> exponents;  // FREE only: dim(A) values, ascending
  json root;                   // step tree
};

/// Rule-based freeness certification engine. All rules are deterministic
/// functions of their inputs; results are cached per canonical arrangement
/// key, and every produced certificate is recorded in a fact registry that
/// rejects contradictions.
class FreenessEngine {
 public:
  struct Options {
    int threads = 1;
    bool deletion_recursion = true;  // allow the addition-deletion scan over deletions
  };

  explicit FreenessEngine(Options options = {});
  ~FreenessEngine();

  FreenessEngine(const FreenessEngine&) = delete;
  FreenessEngine& operator=(const FreenessEngine&) = delete;

  const Options& options() const { return options_; }

  /// Priority-ordered orchestrator: factorization filter, rank <= 2 base,
  /// rank-3 decision, supersolvability, divisional flags, division over all
  /// hyperplanes, the triple rule, then addition-deletion over deletions.
  /// UNDECIDED is a legitimate outcome in rank >= 4.
  Certificate certify(const Arrangement& a);

  // -- individual inference rules ------------------------------------------

  /// NOT-FREE when the essential characteristic polynomial does not split
  /// into integer linear factors.
  std::optional<Certificate> factorization_filter(const Arrangement& a);

  /// Complete freeness decision for arrangements of essential rank 3 via the
  /// second Betti number of the Ziegler restriction. Verifies that the
  /// verdict does not depend on the chosen hyperplane. Throws
  /// std::invalid_argument when the essential rank is not 3.
  Certificate rank3_decide(const Arrangement& a);

  /// Modular-flag search (definition test). A must be essential.
  std::optional<std::vector<Flat>> modular_flag(const Arrangement& a);
  /// Betti-sum flag search over localizations; equivalent to modular_flag.
  std::optional<std::vector<Flat>> b2_flag(const Arrangement& a);
  /// FREE certificate from a modular flag, when one exists.
  std::optional<Certificate> supersolvable(const Arrangement& a);
  /// Reverses a modular flag into a divisional flag and verifies the
  /// divisional identity; throws std::logic_error if verification fails.
  std::vector<Flat> ss_implies_df(const Arrangement& a, const std::vector<Flat>& modular);

  /// Depth-first search for a divisional flag: a chain of restrictions with
  /// the second-Betti-number identity tight at every step.
  std::optional<Certificate> divisional_freeness(const Arrangement& a);

  /// FREE(A) when some restriction is free and its characteristic polynomial
  /// divides that of A.
  std::optional<Certificate> division_step(const Arrangement& a, std::size_t h);

  /// FREE for the whole triple (A, A', A^H) when A^H is free and the second
  /// Betti numbers satisfy the division equality. Returns the certificate
  /// for A; the deletion certificate is recorded as a side fact.
  std::optional<Certificate> triple_rule(const Arrangement& a, std::size_t h);

  enum class TripleTarget { Full, Deletion, Restriction };
  /// Classical addition-deletion: certificates for two members of the triple
  /// with matching exponent patterns force the third.
  std::optional<Certificate> addition_deletion_step(const Arrangement& a, std::size_t h,
                                                    TripleTarget target,
                                                    bool deletion_recursion = true);

  /// FREE(A^H) from a free deletion A \ {L} through a heavy enough overlap
  /// |A_{L cap H}| >= 3, under the Betti division equality.
  std::optional<Certificate> deform_step(const Arrangement& a, std::size_t h, std::size_t l);

  /// FREE(A^H) when the division holds and the Ziegler restriction minus a
  /// point multiplicity is known free (via a free deletion or rank <= 2).
  std::optional<Certificate> multideform_step(const Arrangement& a, std::size_t h,
                                              std::size_t x_induced);

  /// Flag propagation along restrictions: from FREE(A) and FREE(A^{X_k})
  /// with matching cardinality gaps (betti_form = false), or from the two
  /// Betti conditions in place of FREE(A) (betti_form = true). Returns
  /// certificates for the intermediate restrictions (and A itself in the
  /// Betti form).
  std::optional<std::vector<Certificate>> flag_propagation(const Arrangement& a,
                                                           const std::vector<Flat>& flag,
                                                           bool betti_form);

  /// Descent: several hyperplanes through one codimension-2 flat; frees all
  /// single deletions and the joint deletion.
  std::optional<std::vector<Certificate>> descent_step(const Arrangement& a,
                                                       const std::vector<std::size_t>& hs);

  /// NOT-FREE for the deletion A \ {H} via Ziegler multiplicities on a
  /// codimension-2 flat of the restriction. Requires A certified FREE.
  std::optional<Certificate> nonfree_by_ziegler(const Arrangement& a, std::size_t h);

  // -- scan mode -------------------------------------------------------------

  /// Per-hyperplane scan for modified-division counterexample candidates.
  json conjecture_scan(const Arrangement& a);

  /// Per-hyperplane deletion report: triple rule and Ziegler non-freeness.
  json deletion_scan(const Arrangement& a);

  // -- registry ---------------------------------------------------------------

  std::optional<Verdict> known_verdict(const std::string& key) const;
  std::vector<Certificate> recorded_certificates() const;

 private:
  struct Impl;
  Options options_;
  std::unique_ptr<Impl> impl_;
};

/// Soundness invariants of a FREE certificate: exponent count equals the
/// ambient dimension, the sum equals |A|, the pairwise-product sum equals
/// b2(A), and the characteristic polynomial factors accordingly.
/// Throws std::logic_error on violation.
void verify_certificate(const Certificate& cert, const Arrangement& subject);

/// Re-executes the rule recorded at the root of a certificate tree on a
/// fresh engine and compares the reproduced tree bit for bit.
bool replay_certificate(const json& root);

}  // namespace arrcert
