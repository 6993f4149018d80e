//! Univariate polynomials over ℚ.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty list. Factorization is deliberately limited
//! to irreducible factors of degree at most two — the class every supported
//! pencil construction stays inside — and anything beyond that is rejected
//! with [`Error::IrreducibleFactorTooLarge`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::{denominator_lcm, rat_cmp, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable λ.
    pub fn lambda() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `λ - alpha`.
    pub fn linear_root(alpha: &Rat) -> Self {
        Poly::from_coeffs(vec![-alpha, Rat::one()])
    }

    /// Trims trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of λ^k, zero-padded beyond the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Rat::from_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Multiplication by λ^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d_deg)];
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let factor = rem.leading().unwrap() / &d_lead;
            let shift = r_deg - d_deg;
            quot[shift] = factor.clone();
            // rem -= factor * λ^shift * divisor
            let mut coeffs = rem.coeffs;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                let delta = &factor * c;
                coeffs[shift + k] -= &delta;
            }
            rem = Poly::from_coeffs(coeffs);
        }
        (Poly::from_coeffs(quot), rem)
    }

    /// Exact division; panics when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Discriminant `u^2 - 4v` of a monic quadratic `λ^2 + uλ + v`.
    /// Panics unless the polynomial is a monic quadratic.
    pub fn quadratic_discriminant(&self) -> Rat {
        assert_eq!(self.degree(), Some(2));
        assert!(self.coeff(2).is_one(), "quadratic must be monic");
        let u = self.coeff(1);
        let v = self.coeff(0);
        &(&u * &u) - &(&Rat::from_int(4) * &v)
    }

    /// True for a monic quadratic with no rational root.
    pub fn is_irreducible_quadratic(&self) -> bool {
        self.degree() == Some(2)
            && self.coeff(2).is_one()
            && !self.quadratic_discriminant().is_rational_square()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "x")?;
                }
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] += &prod;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    let mut a = p.monic();
    let mut b = q.monic();
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Deterministic order on polynomials: by degree, then by coefficients from
/// the constant term up. Used wherever factor lists need a canonical order.
pub fn poly_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match rat_cmp(x, y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    })
}

/// Factors a nonzero polynomial into monic irreducible factors of degree at
/// most two, with multiplicities, sorted canonically. The product of the
/// returned prime powers times a rational constant reproduces the input.
///
/// Fails with [`Error::IrreducibleFactorTooLarge`] when the input has an
/// irreducible factor of degree three or more over ℚ.
pub fn factor_low_degree(p: &Poly) -> Result<Vec<(Poly, usize)>, Error> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    let mut rest = p.monic();

    // Powers of λ.
    let lambda_mult = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
    if lambda_mult > 0 {
        factors.push((Poly::lambda(), lambda_mult));
        rest = Poly::from_coeffs(rest.coeffs[lambda_mult..].to_vec());
    }

    // Rational roots, with multiplicity.
    for root in rational_root_candidates(&rest) {
        let mut mult = 0;
        let lin = Poly::linear_root(&root);
        while !rest.is_constant() && rest.eval(&root).is_zero() {
            rest = rest.exact_div(&lin);
            mult += 1;
        }
        if mult > 0 {
            factors.push((lin, mult));
        }
    }

    // What is left has no rational roots; split it into quadratics,
    // square-free layer by square-free layer.
    if !rest.is_constant() {
        for (part, mult) in squarefree_decomposition(&rest) {
            let mut s = part;
            loop {
                match s.degree() {
                    None | Some(0) => break,
                    Some(2) => {
                        factors.push((s.clone(), mult));
                        break;
                    }
                    Some(_) => match find_monic_quadratic_factor(&s) {
                        Some(q) => {
                            s = s.exact_div(&q).monic();
                            factors.push((q, mult));
                        }
                        None => {
                            return Err(Error::IrreducibleFactorTooLarge(s.to_string()));
                        }
                    },
                }
            }
        }
    }

    factors.sort_by(|(a, _), (b, _)| poly_cmp(a, b));

    debug_assert_eq!(
        {
            let mut prod = Poly::one();
            for (q, e) in &factors {
                prod = &prod * &q.pow(*e);
            }
            prod
        },
        p.monic(),
        "factorization does not reproduce the input"
    );

    Ok(factors)
}

/// Yun decomposition: returns pairwise-coprime square-free parts with their
/// exponents, skipping trivial parts. Input must be monic and nonconstant.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a = poly_gcd(f, &df);
    let mut b = f.exact_div(&a).monic();
    let mut d = &df.exact_div(&a) - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let g = poly_gcd(&b, &d);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        b = b.exact_div(&g).monic();
        d = &d.exact_div(&g) - &b.derivative();
        i += 1;
    }
    out
}

/// Candidate rational roots of a monic rational polynomial with nonzero
/// constant term, via the integer rational-root bound on a scaled copy.
fn rational_root_candidates(p: &Poly) -> Vec<Rat> {
    if p.is_constant() {
        return Vec::new();
    }
    let (ints, _scale) = to_monic_integer(p);
    let a0 = ints[0].clone();
    if a0.is_zero() {
        // λ | scaled copy is handled by the caller before this point, but be
        // safe: zero is the only extra candidate.
        return vec![Rat::zero()];
    }
    let mut out = Vec::new();
    for d in signed_divisors(&a0) {
        out.push(Rat::from_big(d, BigInt::one()));
    }
    // Map candidates of the scaled polynomial x = c·λ back to λ = x/c.
    let c = _scale;
    out.iter()
        .map(|x| x / &Rat::from_big(c.clone(), BigInt::one()))
        .collect()
}

/// Scales a monic rational polynomial p(λ) into the monic integer polynomial
/// P(x) = c^n p(x/c), where c is the lcm of the coefficient denominators.
/// Returns (coefficients of P lowest-first, c).
fn to_monic_integer(p: &Poly) -> (Vec<BigInt>, BigInt) {
    let n = p.degree().expect("nonzero polynomial required");
    assert!(p.leading().unwrap().is_one(), "monic polynomial required");
    let c = denominator_lcm(p.coeffs());
    let c_rat = Rat::from_big(c.clone(), BigInt::one());
    let mut ints = Vec::with_capacity(n + 1);
    let mut power = Rat::one();
    // b_k = a_k · c^{n-k}: iterate from the top down.
    let mut scaled = vec![BigInt::zero(); n + 1];
    for k in (0..=n).rev() {
        let v = &p.coeff(k) * &power;
        debug_assert!(v.is_integer());
        scaled[k] = v.numer().clone();
        power = &power * &c_rat;
    }
    ints.extend(scaled);
    (ints, c)
}

/// All divisors of a nonzero integer, both signs, ordered by absolute value
/// then sign for determinism.
fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if dd > n {
            break;
        }
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            if dd != n {
                large.push(&n / &d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    let mut out = Vec::with_capacity(small.len() * 2);
    for d in small {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

/// Searches for a monic rational quadratic factor of a monic square-free
/// polynomial without rational roots. Every such factor corresponds to a
/// monic integer quadratic factor Q of the scaled integer copy P, and then
/// Q(0) divides P(0) and Q(1) divides P(1); enumerating those divisor pairs
/// is exhaustive.
fn find_monic_quadratic_factor(s: &Poly) -> Option<Poly> {
    let (ints, c) = to_monic_integer(s);
    let big_p = Poly::from_coeffs(
        ints.iter()
            .map(|b| Rat::from_big(b.clone(), BigInt::one()))
            .collect(),
    );
    let p0 = big_p.eval(&Rat::zero());
    let p1 = big_p.eval(&Rat::one());
    // No rational roots, so neither value vanishes.
    assert!(!p0.is_zero() && !p1.is_zero());
    let c_rat = Rat::from_big(c.clone(), BigInt::one());
    let c2 = &c_rat * &c_rat;
    for v in signed_divisors(p0.numer()) {
        for w in signed_divisors(p1.numer()) {
            let u = &w - BigInt::one() - &v;
            let candidate = Poly::from_coeffs(vec![
                Rat::from_big(v.clone(), BigInt::one()),
                Rat::from_big(u, BigInt::one()),
                Rat::one(),
            ]);
            if candidate.divides(&big_p) {
                // Map x = c·λ back: q(λ) = λ² + (U/c)λ + V/c².
                let q = Poly::from_coeffs(vec![
                    &candidate.coeff(0) / &c2,
                    &candidate.coeff(1) / &c_rat,
                    Rat::one(),
                ]);
                debug_assert!(q.divides(s));
                return Some(q);
            }
        }
    }
    None
}
