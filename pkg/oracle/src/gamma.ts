import { C, Decimal, PI, cadd, cdiv, cexp, clog, cmul, cpow, cpx, csub, dec } from "./precision";

// Spouge's approximation: with a ~ digits / log10(2*pi) the relative error
// is below a^(-1/2) (2*pi)^(-a), comfortably under the working precision.
const SPOUGE_A = 55;

const spougeC: Decimal[] = (() => {
  const c: Decimal[] = [];
  // c_0 = sqrt(2 pi)
  c.push(PI.times(2).sqrt());
  let fact = dec(1);
  for (let k = 1; k < SPOUGE_A; k++) {
    if (k > 1) fact = fact.times(-(k - 1));
    const ak = dec(SPOUGE_A - k);
    const term = ak.pow(dec(k).minus(0.5)).times(Decimal.exp(ak)).div(fact);
    c.push(term);
  }
  return c;
})();

function gammaSpouge(z: C): C {
  // Gamma(z) with Re z >= 1/2 via Gamma(z+1)/z
  const zm1 = csub(z, cpx(1));
  let sum = cpx(spougeC[0]);
  for (let k = 1; k < SPOUGE_A; k++) {
    sum = cadd(sum, cdiv(cpx(spougeC[k]), cadd(zm1, cpx(k))));
  }
  const base = cadd(zm1, cpx(SPOUGE_A));
  const pref = cexp(csub(cmul(cadd(zm1, cpx(0.5)), clog(base)), base));
  return cmul(pref, sum);
}

/** Gamma on the complex plane (principal branch), via reflection for Re z < 1/2. */
export function gammaC(z: C): C {
  if (z.re.lt(0.5)) {
    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    const piz = cmul(cpx(PI), z);
    const sin = cpx(
      Decimal.sin(piz.re).times(Decimal.cosh(piz.im)),
      Decimal.cos(piz.re).times(Decimal.sinh(piz.im)),
    );
    return cdiv(cpx(PI), cmul(sin, gammaC(csub(cpx(1), z))));
  }
  return gammaSpouge(z);
}

/** Gamma for real arguments (poles excluded). */
export function gammaR(x: Decimal | number): Decimal {
  return gammaC(cpx(x)).re;
}
