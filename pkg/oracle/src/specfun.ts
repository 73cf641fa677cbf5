import { D, Decimal, ONE, PI, dec } from "./precision";
import { gammaR } from "./gamma";

/** Generalized Laguerre polynomial L_n^a(x) by the exact three-term recurrence. */
export function laguerre(n: number, a: Decimal | number, x: Decimal | number): D {
  const av = new Decimal(a);
  const xv = new Decimal(x);
  if (n === 0) return ONE;
  let prev = ONE;
  let cur = av.plus(1).minus(xv);
  for (let k = 1; k < n; k++) {
    const next = cur
      .times(dec(2 * k + 1).plus(av).minus(xv))
      .minus(prev.times(av.plus(k)))
      .div(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/**
 * Scaled modified Bessel function I_nu(x) / x^nu by its power series
 *   sum_k (x/2)^{2k} / (k! Gamma(nu + k + 1) 2^nu),
 * entire in x, valid for every nu > -1 (and nu = -1/2 in particular).
 */
export function besselIScaled(nu: Decimal | number, x: Decimal | number): D {
  const nuv = new Decimal(nu);
  const q = new Decimal(x).times(new Decimal(x)).div(4); // (x/2)^2
  let term = ONE.div(gammaR(nuv.plus(1))).div(Decimal.pow(2, nuv));
  let sum = term;
  for (let k = 1; k < 500; k++) {
    term = term.times(q).div(dec(k).times(nuv.plus(k)));
    sum = sum.plus(term);
    if (term.abs().lt(sum.abs().times("1e-58"))) break;
  }
  return sum;
}

/** Closed form for nu = +-1/2: sqrt(2/pi) cosh x and sqrt(2/pi) sinh(x)/x. */
export function besselHalfClosed(sign: 1 | -1, x: Decimal | number): D {
  const xv = new Decimal(x);
  const pref = dec(2).div(PI).sqrt();
  if (sign === -1) return pref.times(Decimal.cosh(xv));
  if (xv.isZero()) return pref;
  return pref.times(Decimal.sinh(xv)).div(xv);
}
