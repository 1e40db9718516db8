//! From-the-left collection and the element arithmetic built on it.

use num_integer::Integer;

use super::presentation::{GroupElement, PcPresentation};

impl PcPresentation {
    /// Normal form of a word given as `(generator, exponent)` syllables.
    /// Exponents may be negative or exceed the relative order.
    pub fn collect(&self, word: &[(usize, i64)]) -> GroupElement {
        let mut e = self.identity();
        self.collect_into(e.exponents_mut(), word);
        e
    }

    /// Multiplies the normal form `e` on the right by `word`, in place.
    pub(crate) fn collect_into(&self, e: &mut [u64], word: &[(usize, i64)]) {
        let n = self.len();
        let cf = self.central_from();
        let mut stack: Vec<(usize, i64)> = word.iter().rev().copied().collect();
        while let Some((k, a)) = stack.pop() {
            assert!(k < n, "generator index {k} out of range");
            if a == 0 {
                continue;
            }
            if k >= cf {
                self.add_central(e, k, a as i128);
                continue;
            }
            let r = self.relative_order(k);
            if a < 0 {
                // g^-1 = g^(r-1) w^-1 where g^r = w
                if a < -1 {
                    stack.push((k, a + 1));
                }
                stack.extend(self.power_inverse_word(k).iter().rev().copied());
                stack.push((k, r as i64 - 1));
                continue;
            }
            if e[k + 1..cf].iter().all(|&x| x == 0) {
                let s = e[k] + a as u64;
                e[k] = s % r;
                for _ in 0..s / r {
                    stack.extend(self.power_word(k).iter().rev().copied());
                }
                continue;
            }
            // prefix g^ek suffix g = prefix g^(ek+1) suffix^g
            if a > 1 {
                stack.push((k, a - 1));
            }
            for l in (k + 1..cf).rev() {
                let c = std::mem::take(&mut e[l]);
                if c == 0 {
                    continue;
                }
                match self.conjugate_word(k, l) {
                    None => stack.push((l, c as i64)),
                    Some(w) => {
                        for _ in 0..c {
                            stack.extend(w.iter().rev().copied());
                        }
                    }
                }
            }
            e[k] += 1;
            if e[k] == r {
                e[k] = 0;
                stack.extend(self.power_word(k).iter().rev().copied());
            }
        }
    }

    fn add_central(&self, e: &mut [u64], k: usize, a: i128) {
        let r = self.relative_order(k) as i128;
        let v = e[k] as i128 + a;
        let (q, rem) = v.div_mod_floor(&r);
        e[k] = rem as u64;
        if q != 0 {
            for &(l, c) in self.power_word(k) {
                self.add_central(e, l, q * c as i128);
            }
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut z = x.clone();
        self.collect_into(z.exponents_mut(), &y.word());
        z
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let word: Vec<(usize, i64)> = x.word().into_iter().rev().map(|(g, e)| (g, -e)).collect();
        self.collect(&word)
    }

    /// `x^k` by repeated squaring.
    pub fn power(&self, x: &GroupElement, mut k: u64) -> GroupElement {
        let mut result = self.identity();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    /// `x^k` for a signed exponent.
    pub fn power_signed(&self, x: &GroupElement, k: i64) -> GroupElement {
        let y = self.power(x, k.unsigned_abs());
        if k < 0 {
            self.inverse(&y)
        } else {
            y
        }
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.multiply(x, y);
        let yx = self.multiply(y, x);
        self.multiply(&self.inverse(&yx), &xy)
    }

    /// Left-normed commutator `[x1, ..., xk] = [[x1, ..., x(k-1)], xk]`.
    pub fn commutator_chain(&self, xs: &[&GroupElement]) -> GroupElement {
        let mut it = xs.iter();
        let first = it.next().map_or_else(|| self.identity(), |x| (*x).clone());
        it.fold(first, |acc, x| self.commutator(&acc, x))
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.multiply(x, y);
        self.multiply(&self.inverse(y), &xy)
    }

    /// Smallest `m >= 1` with `x^m = 1`, assuming a consistent presentation.
    ///
    /// Each step divides out the order of the image in the factor at the
    /// current depth, which is cyclic of the relative order there.
    pub fn element_order(&self, x: &GroupElement) -> num_bigint::BigUint {
        let mut order = num_bigint::BigUint::from(1u32);
        let mut y = x.clone();
        loop {
            let d = y.depth();
            if d == self.len() {
                return order;
            }
            let r = self.relative_order(d);
            let s = r / y.exponents()[d].gcd(&r);
            order *= s;
            y = self.power(&y, s);
        }
    }

    pub fn commute(&self, x: &GroupElement, y: &GroupElement) -> bool {
        self.multiply(x, y) == self.multiply(y, x)
    }
}
