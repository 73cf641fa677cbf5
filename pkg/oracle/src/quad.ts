import { C, D, Decimal, PI, cadd, cpx, cscale, dec } from "./precision";

/**
 * Tanh-sinh quadrature on (a, b) for a complex-valued integrand.
 *
 * The integrand receives both the node x and the distance b - x computed
 * without cancellation, so endpoint-singular factors like (1 - x)^{-1/2}
 * keep full relative accuracy.  Levels are doubled until two successive
 * estimates agree to `tolExp` decimal digits.
 */
export function tanhSinh(
  f: (x: D, bMinusX: D) => C,
  a: Decimal | number,
  b: Decimal | number,
  tolExp = 45,
  maxLevel = 10,
): { value: C; err: D } {
  const av = new Decimal(a);
  const bv = new Decimal(b);
  const halfWidth = bv.minus(av).div(2);
  const mid = av.plus(bv).div(2);
  const tol = Decimal.pow(10, -tolExp);
  const halfPi = PI.div(2);

  const evalAt = (u: D): C => {
    // x = mid + halfWidth * tanh(halfPi * sinh(u)); endpoint distances via
    // 1 -+ tanh(v) = 2 e^{-+2v} / (1 + e^{-+2v})
    const v = halfPi.times(Decimal.sinh(u));
    const e2 = Decimal.exp(v.abs().times(-2));
    const tail = e2.times(2).div(e2.plus(1)); // 1 - |tanh v|
    const th = v.isNegative() ? tail.minus(1) : dec(1).minus(tail);
    const x = mid.plus(halfWidth.times(th));
    const bMinusX = v.isNegative()
      ? bv.minus(x)
      : halfWidth.times(tail);
    const w = halfPi.times(Decimal.cosh(u)).div(Decimal.cosh(v).pow(2));
    if (!w.isFinite() || w.lt("1e-70")) return cpx(0);
    return cscale(f(x, bMinusX), w);
  };

  let h = dec(1);
  let sum = evalAt(dec(0));
  let prev = cpx(NaN);
  let value = cpx(NaN);
  let err = dec(NaN);
  for (let level = 0; level <= maxLevel; level++) {
    if (level > 0) h = h.div(2);
    // at each level add the new nodes (odd multiples of h after level 0)
    const kStep = level === 0 ? 1 : 2;
    const kStart = level === 0 ? 1 : 1;
    for (let k = kStart; ; k += kStep) {
      const u = h.times(k);
      if (u.gt(6)) break; // tanh(pi/2 sinh 6) is within 1e-250 of the endpoint
      const contrib = cadd(evalAt(u), evalAt(u.neg()));
      sum = cadd(sum, contrib);
    }
    value = cscale(sum, h.times(halfWidth));
    if (level > 1) {
      const diff = value.re.minus(prev.re).abs().plus(value.im.minus(prev.im).abs());
      const scale = value.re.abs().plus(value.im.abs());
      err = diff;
      if (diff.lt(scale.times(tol))) return { value, err };
    }
    prev = value;
  }
  return { value, err };
}
