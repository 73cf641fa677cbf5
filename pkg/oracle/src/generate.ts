import * as fs from "node:fs";
import * as path from "node:path";
import { C, D, Decimal, cpx, dec } from "./precision";
import { gammaC } from "./gamma";
import { besselHalfClosed, besselIScaled, laguerre } from "./specfun";
import { eigenvalue, hermiteFn1d } from "./hermite";
import { componentKernel, heatKernel, heatKernel1dClosed, heatKernel1dSeries } from "./heat";
import { kernelZeta } from "./kernel";
import { halfBallMeasure } from "./halfball";

const TARGET_DIGITS = 40;
const STORE_DIGITS = 17;

interface Fixture {
  id: string;
  op: string;
  inputs: Record<string, unknown>;
  expected: number | { re: number; im: number };
  precision: number;
  rtol: number;
  anchor: string;
}

function store(v: D): number {
  return Number(v.toSignificantDigits(STORE_DIGITS).toString());
}

function storeC(v: C): { re: number; im: number } {
  return { re: store(v.re), im: store(v.im) };
}

/** Two independent evaluations must agree to the target digits. */
function consistent(id: string, a: D, b: D, digits = TARGET_DIGITS): D {
  const scale = Decimal.max(a.abs(), b.abs(), "1e-300");
  const rel = a.minus(b).abs().div(scale);
  if (rel.gt(Decimal.pow(10, -digits))) {
    throw new Error(`oracle self-check failed for ${id}: methods differ by ${rel.toExponential(3)}`);
  }
  return a;
}

function build(): Fixture[] {
  const fixtures: Fixture[] = [];

  // --- Laguerre: recurrence vs the explicit binomial sum -------------------
  const laguerreSum = (n: number, a: number, x: number): D => {
    // sum_k (-1)^k C(n+a, n-k) x^k / k!
    let sum = dec(0);
    for (let k = 0; k <= n; k++) {
      let binom = dec(1);
      for (let j = 1; j <= n - k; j++) binom = binom.times(dec(a).plus(k + j)).div(j);
      let term = binom.times(Decimal.pow(x, k));
      for (let j = 1; j <= k; j++) term = term.div(j);
      sum = k % 2 === 0 ? sum.plus(term) : sum.minus(term);
    }
    return sum;
  };
  for (const [n, a, x] of [
    [5, 0.5, 2.3],
    [8, -0.3, 1.1],
    [12, 1.7, 4.0],
  ] as [number, number, number][]) {
    const id = `laguerre_n${n}_a${a}_x${x}`;
    const v = consistent(id, laguerre(n, a, x), laguerreSum(n, a, x));
    fixtures.push({
      id,
      op: "laguerre",
      inputs: { n, a, x },
      expected: store(v),
      precision: TARGET_DIGITS,
      rtol: 1e-12,
      anchor: "three-term recurrence, checked against the explicit binomial sum",
    });
  }

  // --- Scaled Bessel: series vs half-integer closed forms ------------------
  const besselCases: [number, number, string][] = [
    [-0.5, 0.7, "closed"],
    [0.5, -3.2, "closed"],
    [2.3, 0.9, "series"],
    [2.3, 40.0, "series"],
    [0.0, 12.5, "series"],
  ];
  for (const [nu, x, kind] of besselCases) {
    const id = `bessel_scaled_nu${nu}_x${x}`;
    let v = besselIScaled(nu, x);
    if (kind === "closed") {
      v = consistent(id, v, besselHalfClosed(nu < 0 ? -1 : 1, x));
    }
    fixtures.push({
      id,
      op: "bessel_i_scaled",
      inputs: { nu, x },
      expected: store(v),
      precision: TARGET_DIGITS,
      rtol: 1e-12,
      anchor:
        kind === "closed"
          ? "entire power series, checked against the cosh/sinh closed form"
          : "entire power series of I_nu(x)/x^nu",
    });
  }

  // --- Complex gamma: Spouge vs the recurrence Gamma(z+1) = z Gamma(z) -----
  const gammaCases: [number, number][] = [
    [0.5, 0.0],
    [0.0, 1.0],
    [0.0, 3.0],
    [-1.5, 0.5],
  ];
  for (const [re, im] of gammaCases) {
    const id = `gamma_${re}_${im}`;
    const v = gammaC(cpx(re, im));
    // shift check: Gamma(z) = Gamma(z+1)/z
    const zp = gammaC(cpx(re + 1, im));
    const z = cpx(re, im);
    const den = z.re.times(z.re).plus(z.im.times(z.im));
    const shifted = {
      re: zp.re.times(z.re).plus(zp.im.times(z.im)).div(den),
      im: zp.im.times(z.re).minus(zp.re.times(z.im)).div(den),
    };
    consistent(id, v.re, shifted.re);
    consistent(id, v.im.abs().lt("1e-50") ? dec(0) : v.im, v.im.abs().lt("1e-50") ? dec(0) : shifted.im);
    fixtures.push({
      id,
      op: "gamma_complex",
      inputs: { re, im },
      expected: storeC(v),
      precision: TARGET_DIGITS,
      rtol: 1e-12,
      anchor: "Spouge series with reflection, checked against the shift recurrence",
    });
  }

  // --- 1-d eigenfunctions ---------------------------------------------------
  for (const [n, a, x] of [
    [4, 0.5, 1.2],
    [5, -0.5, 0.8],
    [3, 1.7, 2.0],
    [11, 0.3, -1.4],
  ] as [number, number, number][]) {
    const id = `hermite_n${n}_a${a}_x${x}`;
    fixtures.push({
      id,
      op: "hermite_fn_1d",
      inputs: { n, a, x },
      expected: store(hermiteFn1d(n, a, x)),
      precision: TARGET_DIGITS,
      rtol: 1e-12,
      anchor: "normalized Laguerre form of the weighted oscillator eigenfunctions",
    });
  }

  fixtures.push({
    id: "eigenvalue_d2",
    op: "eigenvalue",
    inputs: { n: [3, 4], alpha: [0.3, 1.7] },
    expected: store(eigenvalue([3, 4], [0.3, 1.7])),
    precision: TARGET_DIGITS,
    rtol: 1e-15,
    anchor: "2|n| + 2|alpha| + 2d, exact arithmetic",
  });

  // --- heat kernel: closed form vs the 200-term eigenfunction series -------
  const heat1dCases: [number, number, number, number][] = [
    [0.5, 0.3, 1.0, 2.0],
    [-0.5, 0.8, -0.7, 1.3],
    [1.7, 0.45, 0.6, 0.9],
  ];
  for (const [a, t, x, y] of heat1dCases) {
    const id = `heat1d_a${a}_t${t}_x${x}_y${y}`;
    const v = consistent(id, heatKernel1dClosed(a, t, x, y), heatKernel1dSeries(a, t, x, y), 30);
    fixtures.push({
      id,
      op: "heat_kernel_1d",
      inputs: { a, t, x, y },
      expected: store(v),
      precision: TARGET_DIGITS,
      rtol: 1e-8,
      anchor: "closed Bessel form, checked against the 200-term eigenfunction series",
    });
  }

  fixtures.push({
    id: "heat_d2",
    op: "heat_kernel",
    inputs: { alpha: [0.3, 1.7], t: 0.5, x: [0.6, 1.2], y: [1.4, 0.8] },
    expected: store(heatKernel([0.3, 1.7], 0.5, [0.6, 1.2], [1.4, 0.8])),
    precision: TARGET_DIGITS,
    rtol: 1e-8,
    anchor: "tensor product of the 1-d closed forms",
  });

  fixtures.push({
    id: "component_d1_odd",
    op: "component_kernel",
    inputs: { alpha: [0.7], eps: [1], t: 0.4, x: [1.0], y: [2.0] },
    expected: store(componentKernel([0.7], [1], 0.4, [1.0], [2.0])),
    precision: TARGET_DIGITS,
    rtol: 1e-8,
    anchor: "parity projection (G(x,y) - G(x,-y))/2 of the closed form",
  });
  fixtures.push({
    id: "component_d2_mixed",
    op: "component_kernel",
    inputs: { alpha: [0.3, 1.7], eps: [1, 0], t: 0.6, x: [0.9, 1.1], y: [1.8, 0.4] },
    expected: store(componentKernel([0.3, 1.7], [1, 0], 0.6, [0.9, 1.1], [1.8, 0.4])),
    precision: TARGET_DIGITS,
    rtol: 1e-8,
    anchor: "per-axis parity projection of the closed form",
  });

  // --- imaginary-power kernel (zeta route, half-integer alpha) -------------
  const kernelCases = [
    { alpha: [-0.5], eps: [0], gamma: 1.0, x: [1.0], y: [2.0] },
    { alpha: [0.5], eps: [1], gamma: 0.5, x: [0.8], y: [2.2] },
    { alpha: [1.5], eps: [0], gamma: 3.0, x: [1.5], y: [2.4] },
    { alpha: [-0.5, 0.5], eps: [0, 1], gamma: 1.0, x: [1.0, 0.8], y: [2.0, 2.2] },
  ];
  for (const cse of kernelCases) {
    const id = `kernel_zeta_a${cse.alpha.join("_")}_e${cse.eps.join("")}_g${cse.gamma}`;
    const { value, err } = kernelZeta(cse);
    const scale = value.re.abs().plus(value.im.abs());
    if (err.div(scale).gt("1e-30")) {
      throw new Error(`oracle quadrature did not converge for ${id}: err ${err.toExponential(3)}`);
    }
    fixtures.push({
      id,
      op: "kernel_zeta_route",
      inputs: cse,
      expected: storeC(value),
      precision: 30,
      rtol: 1e-6,
      anchor: "tanh-sinh quadrature of the zeta-form integral with exact Bessel factors",
    });
  }

  // --- half-ball measures ---------------------------------------------------
  fixtures.push({
    id: "halfball_d1_lebesgue",
    op: "half_ball_measure",
    inputs: { alpha: [-0.5], center: [1.0], radius: 3.0 },
    expected: store(halfBallMeasure([-0.5], [1.0], 3.0)),
    precision: TARGET_DIGITS,
    rtol: 1e-10,
    anchor: "exact power difference; reduces to the clipped interval length",
  });
  fixtures.push({
    id: "halfball_d1_weighted",
    op: "half_ball_measure",
    inputs: { alpha: [0.7], center: [1.3], radius: 0.9 },
    expected: store(halfBallMeasure([0.7], [1.3], 0.9)),
    precision: TARGET_DIGITS,
    rtol: 1e-10,
    anchor: "exact power difference for the weighted half-line",
  });
  fixtures.push({
    id: "halfball_d2",
    op: "half_ball_measure",
    inputs: { alpha: [0.3, 1.7], center: [1.0, 2.0], radius: 1.5 },
    expected: store(halfBallMeasure([0.3, 1.7], [1.0, 2.0], 1.5)),
    precision: 30,
    rtol: 1e-6,
    anchor: "tanh-sinh reduction to a single coordinate integral",
  });

  return fixtures;
}

function main() {
  const fixtures = build();
  const ids = new Set(fixtures.map((f) => f.id));
  if (ids.size !== fixtures.length) throw new Error("duplicate fixture ids");
  const outPath = process.argv[2] ?? path.join(__dirname, "..", "..", "..", "fixtures", "fixtures.json");
  const doc = { schema: "dunklosc-fixtures/1", generator: "oracle", fixtures };
  fs.writeFileSync(outPath, JSON.stringify(doc, null, 2) + "\n");
  console.log(`wrote ${fixtures.length} fixtures to ${outPath}`);
}

main();
