import { D, Decimal, dec } from "./precision";
import { gammaR } from "./gamma";
import { laguerre } from "./specfun";

/**
 * Orthonormal generalized Hermite function on the line,
 *   h_{2m+p}^a(x) = d_{2m+p} e^{-x^2/2} x^p L_m^{a+p}(x^2),  p in {0,1},
 *   d_{2m+p} = (-1)^m sqrt(Gamma(m+1) / Gamma(m+a+1+p)),
 * normalized against the weight |x|^{2a+1} on the whole line.
 */
export function hermiteFn1d(n: number, a: Decimal | number, x: Decimal | number): D {
  const av = new Decimal(a);
  const xv = new Decimal(x);
  const p = n % 2;
  const m = (n - p) / 2;
  let coef = gammaR(dec(m + 1)).div(gammaR(av.plus(m + 1 + p))).sqrt();
  if (m % 2 === 1) coef = coef.neg();
  const u = xv.times(xv);
  let val = coef.times(Decimal.exp(u.div(2).neg())).times(laguerre(m, av.plus(p), u));
  if (p === 1) val = val.times(xv);
  return val;
}

/** Oscillator eigenvalue 2|n| + 2|alpha| + 2d for a multi-index. */
export function eigenvalue(n: number[], alpha: (Decimal | number)[]): D {
  let s = dec(2 * n.reduce((a, b) => a + b, 0) + 2 * alpha.length);
  for (const a of alpha) s = s.plus(new Decimal(a).times(2));
  return s;
}
