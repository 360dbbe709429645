#include "natop/homogeneity.hpp"

#include <algorithm>
#include <functional>

namespace natop {

std::string TensorSignature::to_string() const {
  return "(1," + std::to_string(phi_p) + ")x(" + std::to_string(psi_r) + "," + std::to_string(psi_s) + ")->(" +
         std::to_string(out_contra) + "," + std::to_string(out_cov) + ")";
}

std::string DegreeSolution::to_string() const {
  std::string s;
  auto emit = [&](char name, const std::vector<int>& v) {
    for (std::size_t l = 0; l < v.size(); ++l)
      if (v[l]) {
        if (!s.empty()) s += ", ";
        s += std::string(1, name) + std::to_string(l) + "=" + std::to_string(v[l]);
      }
  };
  emit('a', a);
  emit('b', b);
  return "{" + s + "}";
}

long degree_weight(const TensorSignature& sig, const DegreeSolution& sol) {
  long w = 0;
  for (std::size_t l = 0; l < sol.a.size(); ++l) w += static_cast<long>(sig.phi_p + static_cast<int>(l) - 1) * sol.a[l];
  for (std::size_t l = 0; l < sol.b.size(); ++l)
    w += static_cast<long>(sig.psi_s - sig.psi_r + static_cast<int>(l)) * sol.b[l];
  return w;
}

std::vector<DegreeSolution> solve_degree_equation(const TensorSignature& sig, int max_order, bool bilinear) {
  if (max_order < 1) throw std::invalid_argument("max order must be at least 1");
  const int p = sig.phi_p, r = sig.psi_r, s = sig.psi_s;
  const long target = s - r + p;
  const std::size_t n = static_cast<std::size_t>(max_order) + 1;
  std::vector<DegreeSolution> out;

  if (bilinear) {
    for (std::size_t la = 0; la < n; ++la)
      for (std::size_t lb = 0; lb < n; ++lb) {
        DegreeSolution sol{std::vector<int>(n, 0), std::vector<int>(n, 0)};
        sol.a[la] = 1;
        sol.b[lb] = 1;
        if (degree_weight(sig, sol) == target) out.push_back(sol);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  if (!(p > 1 && s > r))
    throw HypothesisError("unrestricted search needs p > 1 and s > r so that every weight is positive; got " +
                          sig.to_string() + " (use the bilinear restriction)");

  // weights of (a_0..a_k, b_0..b_k), all positive here
  std::vector<long> weights;
  for (std::size_t l = 0; l < n; ++l) weights.push_back(p + static_cast<long>(l) - 1);
  for (std::size_t l = 0; l < n; ++l) weights.push_back(s - r + static_cast<long>(l));
  std::vector<int> degrees(2 * n, 0);
  std::function<void(std::size_t, long)> scan = [&](std::size_t idx, long remaining) {
    if (idx == degrees.size()) {
      if (remaining == 0)
        out.push_back({std::vector<int>(degrees.begin(), degrees.begin() + static_cast<long>(n)),
                       std::vector<int>(degrees.begin() + static_cast<long>(n), degrees.end())});
      return;
    }
    for (long d = 0; d * weights[idx] <= remaining; ++d) {
      degrees[idx] = static_cast<int>(d);
      scan(idx + 1, remaining - d * weights[idx]);
    }
    degrees[idx] = 0;
  };
  scan(0, target);
  std::sort(out.begin(), out.end());
  return out;
}

OrderCertificate certify_first_order(const TensorSignature& sig, int max_order) {
  auto sols = solve_degree_equation(sig, max_order, true);
  OrderCertificate cert{sig, max_order, {}};
  for (const auto& sol : sols) {
    auto la = std::find(sol.a.begin(), sol.a.end(), 1) - sol.a.begin();
    auto lb = std::find(sol.b.begin(), sol.b.end(), 1) - sol.b.begin();
    cert.shapes.push_back({static_cast<int>(la), static_cast<int>(lb)});
  }
  std::vector<MonomialShape> expected{{0, 1}, {1, 0}};
  std::sort(cert.shapes.begin(), cert.shapes.end(),
            [](const MonomialShape& x, const MonomialShape& y) { return x.phi_order < y.phi_order; });
  if (cert.shapes != expected)
    throw InternalInconsistency("degree equation gave " + std::to_string(sols.size()) +
                                " bilinear solutions for " + sig.to_string());
  return cert;
}

}  // namespace natop
