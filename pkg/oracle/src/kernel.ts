import { C, D, Decimal, PI, cdiv, cexp, cmul, cpx, cscale, dec } from "./precision";
import { gammaC } from "./gamma";
import { besselIScaled } from "./specfun";
import { tanhSinh } from "./quad";

/**
 * Scaled Bessel factor I_nu(z)/z^nu for half-integer nu = m - 1/2.
 *
 * Small |z| uses the entire power series; large |z| the exact
 * cosh/sinh closed forms lifted by the recurrence
 *   S(nu+1) = (S(nu-1) - 2 nu S(nu)) / z^2,
 * which has no cancellation once |z| is large.
 */
export function scaledIHalf(m: number, z: D): D {
  const nu = dec(m).minus(0.5);
  if (z.abs().lt(60)) return besselIScaled(nu, z);
  const pref = dec(2).div(PI).sqrt();
  let prev = pref.times(Decimal.cosh(z)); // S(-1/2)
  if (m === 0) return prev;
  let cur = pref.times(Decimal.sinh(z)).div(z); // S(1/2)
  const z2 = z.times(z);
  for (let k = 1; k < m; k++) {
    const next = prev.minus(cur.times(2 * k - 1)).div(z2);
    prev = cur;
    cur = next;
  }
  return cur;
}

/**
 * The zeta-density of the imaginary-power kernel,
 *   beta(z) = (2^{1-d-i g}/Gamma(i g)) ((1-z^2)/(2z))^p (1-z^2)^{-1}
 *             (2 atanh z)^{i g - 1},   p = d + |alpha| + |eps|.
 * `oneMinusZ` is 1 - z computed without cancellation.
 */
export function betaFactor(d: number, p: D, gamma: D, z: D, oneMinusZ: D): C {
  const oneMinusZ2 = oneMinusZ.times(z.plus(1)); // 1 - z^2
  const L = oneMinusZ.isZero()
    ? dec(Infinity)
    : Decimal.ln(z.plus(1).div(oneMinusZ)); // 2 atanh z
  const cGamma = gammaC(cpx(0, gamma));
  const front = cdiv(cpx(Decimal.pow(2, 1 - d)), cGamma);
  // 2^{-i g} * L^{i g - 1} = exp(i g (ln L - ln 2)) / L
  const phase = gamma.times(Decimal.ln(L).minus(Decimal.ln(2)));
  const osc = cscale(cpx(Decimal.cos(phase), Decimal.sin(phase)), dec(1).div(L));
  const mag = oneMinusZ2.div(z.times(2)).pow(p).div(oneMinusZ2);
  return cscale(cmul(front, osc), mag);
}

export interface KernelCase {
  alpha: number[]; // half-integers only (exact Bessel factors)
  eps: number[];
  gamma: number;
  x: number[];
  y: number[];
}

/**
 * Imaginary-power kernel K(x, y) via the zeta representation,
 *   K = int_0^1 beta(z) (xy)^eps exp(-B(1+z^2)/(4z)) prod_i S(nu_i, k_i) dz,
 *   k_i = x_i y_i (z - 1/z)/2,  B = |x|^2 + |y|^2,  nu_i = alpha_i + eps_i,
 * by tanh-sinh quadrature; integrand returns 0 once the exponent bound
 * guarantees the tail is below the target precision.
 */
export function kernelZeta(cse: KernelCase, tolExp = 40): { value: C; err: D } {
  const d = cse.alpha.length;
  const gamma = dec(cse.gamma);
  let aSum = dec(d);
  const mOrders: number[] = [];
  for (let i = 0; i < d; i++) {
    const nu = cse.alpha[i] + cse.eps[i];
    const m = Math.round(nu + 0.5);
    if (Math.abs(m - 0.5 - nu) > 1e-12) throw new Error("kernelZeta: alpha + eps must be half-integer");
    mOrders.push(m);
    aSum = aSum.plus(cse.alpha[i] + cse.eps[i]);
  }
  let B = dec(0);
  let xyEps = dec(1);
  let absXY = dec(0);
  for (let i = 0; i < d; i++) {
    B = B.plus(dec(cse.x[i]).pow(2)).plus(dec(cse.y[i]).pow(2));
    absXY = absXY.plus(dec(cse.x[i]).times(cse.y[i]).abs());
    if (cse.eps[i] === 1) xyEps = xyEps.times(dec(cse.x[i]).times(cse.y[i]));
  }

  const integrand = (z: D, oneMinusZ: D): C => {
    // overall exponent is at most -(B - 2 sum|x_i y_i|)(1+z^2)/(4z)
    const lead = B.minus(absXY.times(2)).times(z.times(z).plus(1)).div(z.times(4));
    if (lead.gt(180)) return cpx(0);
    let fac = Decimal.exp(B.times(z.times(z).plus(1)).div(z.times(4)).neg());
    const kfac = z.minus(dec(1).div(z)).div(2);
    for (let i = 0; i < d; i++) {
      const kappa = dec(cse.x[i]).times(cse.y[i]).times(kfac);
      fac = fac.times(scaledIHalf(mOrders[i], kappa));
    }
    return cscale(betaFactor(d, aSum, gamma, z, oneMinusZ), fac.times(xyEps));
  };

  return tanhSinh(integrand, 0, 1, tolExp);
}
