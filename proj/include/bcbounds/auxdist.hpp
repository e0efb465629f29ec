#pragma once

// Joint laws of auxiliary random variables and the constructions that
// transform them without changing (or only enlarging) the rate regions they
// describe.

#include <cstddef>
#include <string>
#include <vector>

#include "bcbounds/channel.hpp"
#include "bcbounds/prob.hpp"

namespace bcbounds {

class AuxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (U, X) law p(u) p(x|u).
struct AuxPair {
  Dist pu;
  std::vector<Dist> px_given_u;

  std::size_t nu() const { return pu.size(); }
  std::size_t nx() const { return px_given_u.empty() ? 0 : px_given_u.front().size(); }

  // Joint over (U, X).
  JointDist joint(const std::string& aux_label = "U") const;
  Dist px() const;

  // Throws AuxError if rows disagree with pu in count or alphabet size.
  void check() const;
};

// (U, V, X) law p(u,v) p(x|u,v). Conditional rows are stored per cell in
// row-major (u, v) order.
class AuxTriple {
 public:
  AuxTriple() = default;
  AuxTriple(JointDist puv, std::vector<Dist> px_given_uv);

  // Splits a joint over (U, V, X) into p(u,v) p(x|u,v). Zero-mass cells get a
  // point mass on x = 0.
  static AuxTriple from_joint(const JointDist& puvx);

  std::size_t nu() const { return nu_; }
  std::size_t nv() const { return nv_; }
  std::size_t nx() const { return nx_; }
  const JointDist& puv() const { return puv_; }
  const Dist& px_given(std::size_t u, std::size_t v) const { return rows_[u * nv_ + v]; }
  const std::vector<Dist>& rows() const { return rows_; }
  // True iff every conditional entry is exactly 0 or 1.
  bool deterministic() const { return deterministic_; }

  double p_uv(std::size_t u, std::size_t v) const { return puv_.at({u, v}); }
  JointDist joint() const;  // (U, V, X)
  Dist px() const;
  AuxPair u_pair() const;
  AuxPair v_pair() const;

 private:
  std::size_t nu_ = 0, nv_ = 0, nx_ = 0;
  JointDist puv_;
  std::vector<Dist> rows_;
  bool deterministic_ = false;
};

// (U, V, W, X) law p(u) p(v) p(w|u,v) p(x|u,v,w). U and V are independent by
// construction.
struct CommonInfoAux {
  Dist pu;
  Dist pv;
  std::vector<Dist> pw_given_uv;   // nu*nv rows, (u, v) row-major
  std::vector<Dist> px_given_uvw;  // nu*nv*nw rows, (u, v, w) row-major

  std::size_t nu() const { return pu.size(); }
  std::size_t nv() const { return pv.size(); }
  std::size_t nw() const { return pw_given_uv.empty() ? 0 : pw_given_uv.front().size(); }
  std::size_t nx() const { return px_given_uvw.empty() ? 0 : px_given_uvw.front().size(); }

  void check() const;
  JointDist joint() const;  // (U, V, W, X)

  // Factors a joint over (U, V, W, X). Throws AuxError reporting the largest
  // |p(u,v) - p(u)p(v)| when U and V are dependent beyond kMassTolerance.
  static CommonInfoAux from_joint(const JointDist& puvwx);
};

// Joint over (U, V, X, Y, Z).
JointDist induced_joint(const AuxTriple& a, const BroadcastChannel& c);
// Joint over (U, X, Y, Z).
JointDist induced_joint(const AuxPair& a, const BroadcastChannel& c);
// Joint over (U, V, W, X, Y, Z).
JointDist induced_joint(const CommonInfoAux& g, const BroadcastChannel& c);

// Splits every u and v into |X| copies so that X becomes a deterministic
// function of the new pair: P(U*=u_i, V*=v_j) = P(U=u, V=v, X=(i-j) mod m)/m
// and X* = (i-j) mod m. New symbol u_i has index u*m + i.
AuxTriple split_construction(const AuxTriple& a);

// p(u,v,x) = p(x) p(u|x) p(v|x). Throws AuxError when the two pairs imply
// different input laws.
AuxTriple canonical_coupling(const AuxPair& u_side, const AuxPair& v_side,
                             const BroadcastChannel& c);

// Exchanges the receivers' roles for binary X: U' takes V's alphabet, V' takes
// U's, and the input symbol is complemented.
AuxTriple skew_symmetry_swap(const AuxTriple& a);

// Equal mixture of `a` and its skew-symmetric swap, with the mixing variable
// folded into both auxiliaries: U* = (U~, Q) has index q*n + u~ where
// n = max(nu, nv). P(X*=1) = 1/2 exactly.
AuxTriple symmetrize_timeshare(const AuxTriple& a);

// One before/after comparison across the split construction.
struct SplitRelation {
  enum class Kind { kEqual, kAfterAtMost, kAfterAtLeast };
  std::string label;
  double before = 0.0;
  double after = 0.0;
  Kind kind = Kind::kEqual;

  // Non-negative when the relation holds exactly; equalities report -|diff|.
  double slack() const;
  bool holds(double tol) const { return slack() >= -tol; }
};

// Entropy relations between a triple and its split: input law, H(Y|U),
// H(Z|U), H(Y|V), H(Z|V), and H(Y*|U*,V*) = H(Y|X) <= H(Y|U,V) with the Z
// counterpart. Items with two parts appear as two entries.
std::vector<SplitRelation> split_entropy_relations(const AuxTriple& original, const AuxTriple& split,
                                                   const BroadcastChannel& c);

// Information relations: I(U;Y), I(V;Z), I(X;Y|V), I(X;Z|U) are preserved;
// I(U;Y|V) and I(V;Z|U) can only grow.
std::vector<SplitRelation> split_information_relations(const AuxTriple& original, const AuxTriple& split,
                                                       const BroadcastChannel& c);

}  // namespace bcbounds
