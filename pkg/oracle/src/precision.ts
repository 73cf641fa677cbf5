import Decimal from "decimal.js";

// Working precision is kept at ~2x the target digits of any stored value.
export const WORKING_DIGITS = 60;
Decimal.set({ precision: WORKING_DIGITS, toExpNeg: -9e15, toExpPos: 9e15 });

export { Decimal };
export type D = Decimal;

export const ZERO = new Decimal(0);
export const ONE = new Decimal(1);
export const TWO = new Decimal(2);

export function dec(v: number | string): Decimal {
  return new Decimal(v);
}

export const PI = Decimal.acos(-1);

/** Complex number with Decimal parts. */
export interface C {
  re: Decimal;
  im: Decimal;
}

export function cpx(re: number | string | Decimal, im: number | string | Decimal = 0): C {
  return { re: new Decimal(re), im: new Decimal(im) };
}

export function cadd(a: C, b: C): C {
  return { re: a.re.plus(b.re), im: a.im.plus(b.im) };
}

export function csub(a: C, b: C): C {
  return { re: a.re.minus(b.re), im: a.im.minus(b.im) };
}

export function cmul(a: C, b: C): C {
  return {
    re: a.re.times(b.re).minus(a.im.times(b.im)),
    im: a.re.times(b.im).plus(a.im.times(b.re)),
  };
}

export function cscale(a: C, s: Decimal | number): C {
  return { re: a.re.times(s), im: a.im.times(s) };
}

export function cdiv(a: C, b: C): C {
  const den = b.re.times(b.re).plus(b.im.times(b.im));
  return {
    re: a.re.times(b.re).plus(a.im.times(b.im)).div(den),
    im: a.im.times(b.re).minus(a.re.times(b.im)).div(den),
  };
}

export function cabs(a: C): Decimal {
  return a.re.times(a.re).plus(a.im.times(a.im)).sqrt();
}

export function cexp(a: C): C {
  const r = Decimal.exp(a.re);
  return { re: r.times(Decimal.cos(a.im)), im: r.times(Decimal.sin(a.im)) };
}

export function clog(a: C): C {
  return { re: Decimal.ln(cabs(a)), im: Decimal.atan2(a.im, a.re) };
}

/** z^w = exp(w log z), principal branch. */
export function cpow(z: C, w: C): C {
  return cexp(cmul(w, clog(z)));
}

export function creciprocal(a: C): C {
  return cdiv(cpx(1), a);
}
