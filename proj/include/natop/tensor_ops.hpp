#pragma once

// Component-level tensor calculus on IndexedExpression. A Tensor carries its
// slot variances explicitly: free ordinal k is slot k. Vector-field arguments
// (Arg heads) let operators be written in argument form and then stripped
// back to components.

#include <stdexcept>
#include <vector>

#include "natop/expr.hpp"

namespace natop {

/// Argument-form expression still depends on derivatives of an argument.
class NotTensorialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tensor {
  IndexedExpression expr;
  std::vector<Variance> slots;

  int rank() const { return static_cast<int>(slots.size()); }
};

/// Normalization of the exterior derivative on k-forms:
/// Determinant gives (k+1) Alt(∂ω), e.g. (dψ)_ij = ∂_iψ_j - ∂_jψ_i;
/// Alternation gives Alt(∂ω).
enum class DConvention { Determinant, Alternation };

Tensor phi_field(int p);              // φ^0_{1..p}
Tensor psi_field(int r, int s);       // ψ^{0..r-1}_{r..r+s-1}
Tensor identity_tensor();             // δ^0_1
Tensor argument(int label);           // X^0 (label 0), Y^0, Z^0, ...
Tensor scalar(const Rational& c);

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(const Rational& c, const Tensor& t);

/// Outer product; slots of b follow those of a.
Tensor tensor(const Tensor& a, const Tensor& b);
/// Contracts an upper slot with a lower slot; later slots move down.
Tensor contract(const Tensor& t, int upper_slot, int lower_slot);
/// R(v_0, ..., v_{n-1}) = T(v_{order[0]}, ..., v_{order[n-1]}).
Tensor arrange(const Tensor& t, const std::vector<int>& order);
/// Partial derivative; the derivative index becomes the new lower slot 0.
Tensor partial(const Tensor& t);

Tensor alternate(const Tensor& t, const std::vector<int>& slots);
Tensor symmetrize(const Tensor& t, const std::vector<int>& slots);
Tensor alternate_all(const Tensor& t);

/// Exterior derivative of a covariant tensor regarded as a form.
Tensor ext_d(const Tensor& form, DConvention conv);
/// Feeds a vector (one upper slot) into a lower slot.
Tensor insert(const Tensor& t, int slot, const Tensor& vector);
/// T(v_0, v_1, ...) with vectors fed into the leading lower slots.
Tensor feed(const Tensor& t, const std::vector<Tensor>& vectors);
/// ω ∘_slot φ: the (1,1) tensor φ is applied to the given argument.
Tensor compose(const Tensor& form, int slot, const Tensor& phi11);
/// Σ_l ω ∘_l φ.
Tensor i_phi(const Tensor& form, const Tensor& phi11);
/// Insertion of a tangent-valued 2-form S into a k-form ω.
Tensor i_S(const Tensor& form, const Tensor& S);

/// L_φ ω = i_φ dω - d i_φ ω.
Tensor lie_derivative_along(const Tensor& form, const Tensor& phi11, DConvention conv);
/// L_S ω = i_S dω + d i_S ω.
Tensor lie_derivative_along_S(const Tensor& form, const Tensor& S, DConvention conv);

/// V^m ∂_m W - W^m ∂_m V for vector tensors.
Tensor bracket(const Tensor& v, const Tensor& w);
/// V.f for a scalar f.
Tensor directional(const Tensor& v, const Tensor& f);
/// Lie derivative of a covariant tensor along a vector (which may itself
/// depend on arguments), computed in argument form.
Tensor lie_derivative(const Tensor& v, const Tensor& covariant);
/// Frölicher–Nijenhuis bracket of two (1,1) tensors, as a (1,2) tensor.
Tensor fn_bracket(const Tensor& k, const Tensor& l);

/// Replaces the listed arguments by new lower slots (appended in the given
/// order). Throws NotTensorialError if a derivative of one survives.
Tensor strip_arguments(const Tensor& t, const std::vector<int>& labels);

}  // namespace natop
