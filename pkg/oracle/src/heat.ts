import { D, Decimal, dec } from "./precision";
import { besselIScaled } from "./specfun";
import { eigenvalue, hermiteFn1d } from "./hermite";

/**
 * One-dimensional heat kernel by its eigenfunction series
 *   G_t^a(x, y) = sum_n e^{-t(2n + 2a + 2)} h_n^a(x) h_n^a(y),
 * summed to `terms` terms; the tail is geometric with ratio e^{-2t}.
 */
export function heatKernel1dSeries(
  a: Decimal | number,
  t: Decimal | number,
  x: Decimal | number,
  y: Decimal | number,
  terms = 200,
): D {
  const tv = new Decimal(t);
  let sum = dec(0);
  for (let n = 0; n < terms; n++) {
    const lam = eigenvalue([n], [a]);
    sum = sum.plus(
      Decimal.exp(tv.times(lam).neg()).times(hermiteFn1d(n, a, x)).times(hermiteFn1d(n, a, y)),
    );
  }
  return sum;
}

/**
 * One-dimensional heat kernel in closed form,
 *   G = (1/(2 sinh 2t)) (sinh 2t)^{-a} e^{-coth(2t)(x^2+y^2)/2}
 *       [scaledI(a, u) + u scaledI(a+1, u)],  u = x y / sinh 2t.
 */
export function heatKernel1dClosed(
  a: Decimal | number,
  t: Decimal | number,
  x: Decimal | number,
  y: Decimal | number,
): D {
  const av = new Decimal(a);
  const tv = new Decimal(t);
  const xv = new Decimal(x);
  const yv = new Decimal(y);
  const sh = Decimal.sinh(tv.times(2));
  const coth = Decimal.cosh(tv.times(2)).div(sh);
  const u = xv.times(yv).div(sh);
  const bracket = besselIScaled(av, u).plus(u.times(besselIScaled(av.plus(1), u)));
  return Decimal.exp(coth.times(xv.times(xv).plus(yv.times(yv))).div(2).neg())
    .times(bracket)
    .div(sh.pow(av).times(sh).times(2));
}

/** d-dimensional heat kernel: the tensor product of the 1-d kernels. */
export function heatKernel(
  alpha: (Decimal | number)[],
  t: Decimal | number,
  x: (Decimal | number)[],
  y: (Decimal | number)[],
): D {
  let prod = dec(1);
  for (let i = 0; i < alpha.length; i++) {
    prod = prod.times(heatKernel1dClosed(alpha[i], t, x[i], y[i]));
  }
  return prod;
}

/**
 * Parity component: per axis (G(x_i, y_i) + (-1)^{eps_i} G(x_i, -y_i)) / 2,
 * multiplied over axes.
 */
export function componentKernel(
  alpha: (Decimal | number)[],
  eps: number[],
  t: Decimal | number,
  x: (Decimal | number)[],
  y: (Decimal | number)[],
): D {
  let prod = dec(1);
  for (let i = 0; i < alpha.length; i++) {
    const plus = heatKernel1dClosed(alpha[i], t, x[i], y[i]);
    const minus = heatKernel1dClosed(alpha[i], t, x[i], new Decimal(y[i]).neg());
    const part = eps[i] === 0 ? plus.plus(minus) : plus.minus(minus);
    prod = prod.times(part.div(2));
  }
  return prod;
}
