#include "clnode/qseries.hpp"

#include <string>

namespace clnode {

TSeries pochhammer_inf(const TSeries& a, const TSeries& qv) {
  const int T = std::min(a.order(), qv.order());
  const auto va = a.valuation();
  if (!va) return TSeries::constant(T, 1);
  const auto vq = qv.valuation();
  if (!vq || *vq < 1) throw NonConvergent("(a;q)_inf needs val_t(q) >= 1");
  const int stop = pochhammer_stop_index(*va, *vq, T);
  TSeries r = TSeries::constant(T, 1);
  TSeries term = a.truncated(T);
  for (int i = 0; i < stop; ++i) {
    r -= r * term;
    term *= qv;
  }
  return r;
}

std::optional<int> min_valuation(const TruncSeries<SymbolicT>& f) {
  std::optional<int> best;
  for (const auto& c : f.coeffs()) {
    const auto v = c.valuation();
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

TSeries evaluate_at_unit(const TruncSeries<SymbolicT>& f, int sign, const std::function<int(int)>& bound) {
  if (sign != 1 && sign != -1) throw OutOfRange("evaluation point must be +1 or -1");
  const int T = f.ring().T;
  const int N = f.order();
  if (T >= bound(N + 1))
    throw TruncationTooLow("t-adic evaluation needs T < bound(N+1) = " + std::to_string(bound(N + 1)) +
                           "; got T = " + std::to_string(T) + ", N = " + std::to_string(N));
  TSeries sum(T);
  for (int n = 0; n <= N; ++n) {
    const auto v = f[n].valuation();
    if (!v) continue;
    if (*v < bound(n)) throw ValuationGuardFailed(n, *v, bound(n));
    if (sign < 0 && (n % 2)) sum -= f[n];
    else sum += f[n];
  }
  return sum;
}

TSeries H_at_unit(int sign, int T) {
  if (sign != 1 && sign != -1) throw OutOfRange("evaluation point must be +1 or -1");
  const SymbolicT ring(T);
  const TSeries t = ring.t();
  TSeries sum(T);
  TSeries tt_k = ring.one();
  for (int k = 0; static_cast<long>(k) * k <= T; ++k) {
    if (k > 0) tt_k *= ring.one() - ring.t_pow(k);
    const TSeries a = TSeries::monomial(T, sign, k + 1);
    sum += ring.t_pow(static_cast<long>(k) * k) * tt_k.inverse() * pochhammer_inf(a, t);
  }
  return sum;
}

TSeries H_at_inverse_power(int i, int T) {
  if (i < 1) throw OutOfRange("H_at_inverse_power needs i >= 1");
  const SymbolicT ring(T);
  const TSeries t = ring.t();
  TSeries sum(T);
  TSeries tt_k = ring.one();
  for (int k = 1; k < i; ++k) tt_k *= ring.one() - ring.t_pow(k);
  for (int k = i; static_cast<long>(k - i) * (k - i) <= T; ++k) {
    if (k > 0) tt_k *= ring.one() - ring.t_pow(k);
    const TSeries a = TSeries::monomial(T, 1, k + 1 - i);
    sum += ring.t_pow(static_cast<long>(k - i) * (k - i)) * tt_k.inverse() * pochhammer_inf(a, t);
  }
  return sum;
}

}  // namespace clnode
