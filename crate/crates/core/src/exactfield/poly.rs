//! Univariate polynomials over GF(p), just enough to split minimal polynomials
//! into coprime factors.

use rand::Rng;

use super::PrimeField;

/// Coefficients low degree first; always trimmed (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn constant(field: PrimeField, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    /// x - a
    pub fn linear(field: PrimeField, a: u32) -> Self {
        Self::new(field, vec![field.neg(a), 1])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u32 {
        *self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *o.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.field.neg(1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.field, vec![]);
        }
        let f = self.field;
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// (quotient, remainder)
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead());
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (Self::new(f, vec![]), self.clone());
        }
        let mut q = vec![0u32; n - dd];
        for i in (dd..n).rev() {
            let c = f.mul(rem[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(rem[k], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        (Self::new(f, q), Self::new(f, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, u, v) with u*self + v*o = g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(f, 1), Self::new(f, vec![]));
        let (mut t0, mut t1) = (Self::new(f, vec![]), Self::constant(f, 1));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// self^e mod m
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::constant(self.field, 1).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Product of the distinct linear factors of `self` (monic).
    pub fn linear_part(&self) -> Self {
        let f = self.field;
        let p = f.characteristic() as u64;
        let xp = Self::x(f).pow_mod(p, self);
        let g = xp.sub(&Self::x(f));
        if g.is_zero() {
            // every element of GF(p) is a root of self, which is then x^p - x times something
            self.gcd(&Self::new(f, vec![]))
        } else {
            self.gcd(&g)
        }
    }

    /// Splits a squarefree product of distinct linear factors into two
    /// nontrivial factors (deg >= 2 required).
    fn split_linear<R: Rng>(&self, rng: &mut R) -> (Self, Self) {
        let f = self.field;
        let p = f.characteristic();
        let deg = self.degree().unwrap();
        debug_assert!(deg >= 2);
        if p <= 2 || p < 4096 {
            // small field: find a root by evaluation
            let root = (0..p).find(|&a| self.eval(a) == 0).expect("linear part has a root");
            let lin = Self::linear(f, root);
            return (lin.clone(), self.div_rem(&lin).0);
        }
        loop {
            let a = rng.gen_range(0..p);
            let shifted = Self::new(f, vec![a, 1]);
            let h = shifted.pow_mod(((p - 1) / 2) as u64, self).sub(&Self::constant(f, 1));
            let g = self.gcd(&h);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < deg {
                let other = self.div_rem(&g).0.monic();
                return (g, other);
            }
        }
    }

    /// Factors a monic polynomial as `f1 * f2` with both factors nonconstant and
    /// coprime, each collecting whole primary components over roots in GF(p).
    /// Returns `None` when no such split is visible from the GF(p)-roots
    /// (no roots at all, or a single root carrying everything).
    pub fn coprime_split<R: Rng>(&self, rng: &mut R) -> Option<(Self, Self)> {
        let deg = self.degree()?;
        if deg < 2 {
            return None;
        }
        let lin = self.linear_part();
        let ld = lin.degree().unwrap_or(0);
        if ld == 0 {
            return None;
        }
        let roots_part = if ld >= 2 { lin.split_linear(rng).0 } else { lin };
        // pull out the full primary part over roots_part
        let mut rest = self.clone();
        let mut primary = Self::constant(self.field, 1);
        loop {
            let g = rest.gcd(&roots_part);
            if g.degree().unwrap_or(0) == 0 {
                break;
            }
            primary = primary.mul(&g);
            rest = rest.div_rem(&g).0;
        }
        if rest.degree().unwrap_or(0) == 0 {
            return None;
        }
        Some((primary.monic(), rest.monic()))
    }
}
