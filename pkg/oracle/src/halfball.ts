import { D, Decimal, cpx, dec } from "./precision";
import { tanhSinh } from "./quad";

/**
 * Measure of the ball B+(c, r) (Euclidean ball intersected with the open
 * positive orthant) under the weight prod_i u_i^{2 alpha_i + 1}.
 *
 * d = 1 integrates exactly to a power difference; d = 2 reduces to a single
 * integral over the first coordinate (requires the ball to stay clear of
 * the second coordinate plane, i.e. r < c_2, so the integrand is smooth).
 */
export function halfBallMeasure(alpha: number[], center: number[], r: number): D {
  const e = alpha.map((a) => dec(2 * a + 2));
  if (alpha.length === 1) {
    const c = dec(center[0]);
    const lo = Decimal.max(c.minus(r), 0);
    return c.plus(r).pow(e[0]).minus(lo.pow(e[0])).div(e[0]);
  }
  if (alpha.length === 2) {
    if (r >= center[1]) throw new Error("halfBallMeasure: d=2 oracle needs r < c_2");
    const c1 = dec(center[0]);
    const c2 = dec(center[1]);
    const lo1 = Decimal.max(c1.minus(r), 0);
    const hi1 = c1.plus(r);
    const rv = dec(r);
    const f = (u: D) => {
      const h = rv.times(rv).minus(u.minus(c1).pow(2));
      const hs = h.isNegative() ? dec(0) : h.sqrt();
      const seg = c2.plus(hs).pow(e[1]).minus(c2.minus(hs).pow(e[1])).div(e[1]);
      return cpx(u.pow(e[0].minus(1)).times(seg));
    };
    return tanhSinh((u) => f(u), lo1, hi1, 40).value.re;
  }
  throw new Error("halfBallMeasure: oracle supports d <= 2");
}
