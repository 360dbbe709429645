#pragma once

// Degree equation for operators of a (1,p) field φ and an (r,s) field ψ:
//   Σ_l (p+l-1) a_l + (s-r+l) b_l = s-r+p,
// where a_l, b_l are the degrees in ∂^l φ and ∂^l ψ.

#include <stdexcept>
#include <string>
#include <vector>

namespace natop {

struct TensorSignature {
  int phi_p = 0;
  int psi_r = 0;
  int psi_s = 0;
  int out_contra = 0;
  int out_cov = 0;

  /// Output (r, s+p).
  static TensorSignature standard(int p, int r, int s) { return {p, r, s, r, s + p}; }
  std::string to_string() const;
  bool operator==(const TensorSignature&) const = default;
};

/// The refusal raised when the positivity hypotheses do not hold.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct DegreeSolution {
  std::vector<int> a;  // a[l] = degree in ∂^l φ
  std::vector<int> b;  // b[l] = degree in ∂^l ψ

  bool operator==(const DegreeSolution&) const = default;
  auto operator<=>(const DegreeSolution&) const = default;
  std::string to_string() const;
};

/// Left-hand side of the degree equation.
long degree_weight(const TensorSignature& sig, const DegreeSolution& sol);

/// Exhaustive. Without `bilinear`, requires p > 1 and s > r (all weights
/// positive), otherwise throws HypothesisError. With `bilinear`, restricts
/// to Σa = Σb = 1. Results are sorted.
std::vector<DegreeSolution> solve_degree_equation(const TensorSignature& sig, int max_order, bool bilinear);

struct MonomialShape {
  int phi_order;  // derivative order on φ
  int psi_order;  // derivative order on ψ
  bool operator==(const MonomialShape&) const = default;
};

struct OrderCertificate {
  TensorSignature signature;
  int max_order_checked;
  std::vector<MonomialShape> shapes;  // {φ·∂ψ, ∂φ·ψ}
};

/// Bilinear certificate; throws InternalInconsistency unless exactly the two
/// first-order shapes come out.
OrderCertificate certify_first_order(const TensorSignature& sig, int max_order = 4);

}  // namespace natop
