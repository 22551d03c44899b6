//! Sparse exact polynomials in x, t, alpha; descent generating
//! polynomials over permutation classes; expansion in the basis
//! x^i (1+x)^(n-1-2i); and a closed-form exponential series that must
//! reproduce the cycle-type sums.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::actions;
use crate::error::{Error, Result};
use crate::perm::{enumerate_capped, is_andre, mix, Permutation, DEFAULT_MAX_N};

/// Cap on the order of the exponential series expansion.
pub const DEFAULT_MAX_ORDER: usize = 12;

/// Exponents of one monomial t^t alpha^alpha x^x.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono {
    pub t: u32,
    pub alpha: u32,
    pub x: u32,
}

impl Mono {
    pub fn new(t: u32, alpha: u32, x: u32) -> Mono {
        Mono { t, alpha, x }
    }

    pub fn xpow(x: u32) -> Mono {
        Mono { t: 0, alpha: 0, x }
    }
}

/// Polynomial with integer coefficients, stored sparsely with no zero
/// coefficients. Terms order and render by (t, alpha, x) exponents.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> MultiPoly {
        let mut p = MultiPoly::default();
        p.add_term(Mono::default(), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, BigInt)>) -> MultiPoly {
        let mut p = MultiPoly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Mono) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(
                    Mono::new(a.t + b.t, a.alpha + b.alpha, a.x + b.x),
                    ca * cb,
                );
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    /// Coefficient of x^i as a polynomial in t and alpha.
    pub fn coeff_x(&self, i: u32) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x == i)
                .map(|(m, c)| (Mono::new(m.t, m.alpha, 0), c.clone())),
        )
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    /// Sets t = 1 and alpha = 1, leaving a polynomial in x.
    pub fn set_t_alpha_one(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::xpow(m.x), c.clone())),
        )
    }

    /// Sets x = 1, leaving a polynomial in t and alpha.
    pub fn set_x_one(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(m.t, m.alpha, 0), c.clone())),
        )
    }

    /// Multiplies the coefficient of every x^i term by 2^i.
    pub fn double_per_x(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, c * (BigInt::one() << m.x))),
        )
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.sign() != Sign::Minus)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.sign() == Sign::Minus;
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&c.abs().to_string());
            if m.t > 0 {
                out.push_str(&format!("*t^{}", m.t));
            }
            if m.alpha > 0 {
                out.push_str(&format!("*alpha^{}", m.alpha));
            }
            if m.x > 0 {
                out.push_str(&format!("*x^{}", m.x));
            }
        }
        f.write_str(&out)
    }
}

fn perm_sum(
    n: usize,
    cap: usize,
    mono: impl Fn(&Permutation) -> Option<Mono>,
) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for s in enumerate_capped(n, cap)? {
        if let Some(m) = mono(&s) {
            out.add_term(m, BigInt::one());
        }
    }
    Ok(out)
}

/// Descent polynomial of the symmetric group; the drop statistic is
/// computed alongside and must give the same polynomial.
pub fn eulerian(n: usize) -> Result<MultiPoly> {
    eulerian_capped(n, DEFAULT_MAX_N)
}

pub fn eulerian_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    let by_des = perm_sum(n, cap, |s| Some(Mono::xpow(s.statistics().des as u32)))?;
    let by_drop = perm_sum(n, cap, |s| Some(Mono::xpow(s.statistics().drop as u32)))?;
    if by_des != by_drop {
        return Err(Error::Internal(
            "descents and drops gave different polynomials".into(),
        ));
    }
    Ok(by_des)
}

/// Refined descent polynomial: x marks descents, t marks minima that are
/// double descents plus right minima that are double ascents, alpha marks
/// lmi + rmi - 2.
pub fn at_eulerian(n: usize) -> Result<MultiPoly> {
    at_eulerian_capped(n, DEFAULT_MAX_N)
}

pub fn at_eulerian_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Precondition("refined descent polynomial needs n >= 1"));
    }
    perm_sum(n, cap, |s| {
        let st = s.statistics();
        Some(Mono::new(
            (st.lmidd + st.rmida) as u32,
            (st.lmi + st.rmi - 2) as u32,
            st.des as u32,
        ))
    })
}

/// Joint distribution over web permutations of 1..=n: x marks drops,
/// t fixed points, alpha cycles.
pub fn web_poly(n: usize) -> Result<MultiPoly> {
    web_poly_capped(n, DEFAULT_MAX_N)
}

pub fn web_poly_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    perm_sum(n, cap, |s| {
        if !s.is_web() {
            return None;
        }
        let st = s.statistics();
        Some(Mono::new(st.fix as u32, st.cyc as u32, st.drop as u32))
    })
}

/// Joint distribution over cycle-up-down permutations of 1..=n: x marks
/// the cycle-wise mix total, t fixed points, alpha cycles.
pub fn delta_poly(n: usize) -> Result<MultiPoly> {
    delta_poly_capped(n, DEFAULT_MAX_N)
}

pub fn delta_poly_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    perm_sum(n, cap, |s| {
        if !s.is_cycle_up_down() {
            return None;
        }
        let st = s.statistics();
        Some(Mono::new(st.fix as u32, st.cyc as u32, s.drop_hat() as u32))
    })
}

/// Coefficient polynomial d(n, i): web permutations of 1..=n-1 with i
/// drops, weighted t^fix alpha^cyc.
pub fn d_web(n: usize, i: u32) -> Result<MultiPoly> {
    d_web_capped(n, i, DEFAULT_MAX_N)
}

pub fn d_web_capped(n: usize, i: u32, cap: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Precondition("d_web needs n >= 1"));
    }
    Ok(web_poly_capped(n - 1, cap)?.coeff_x(i))
}

/// Like [`d_web`] over cycle-up-down permutations with the cycle-wise mix
/// total in place of drops.
pub fn d_delta(n: usize, i: u32) -> Result<MultiPoly> {
    d_delta_capped(n, i, DEFAULT_MAX_N)
}

pub fn d_delta_capped(n: usize, i: u32, cap: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Precondition("d_delta needs n >= 1"));
    }
    Ok(delta_poly_capped(n - 1, cap)?.coeff_x(i))
}

/// Number of Andre permutations of 1..=n with exactly i descents.
pub fn d_andre(n: usize, i: u32) -> Result<BigInt> {
    d_andre_capped(n, i, DEFAULT_MAX_N)
}

pub fn d_andre_capped(n: usize, i: u32, cap: usize) -> Result<BigInt> {
    let mut count = BigInt::zero();
    for s in enumerate_capped(n, cap)? {
        if is_andre(s.oneline()) && s.statistics().des as u32 == i {
            count += 1;
        }
    }
    Ok(count)
}

/// The basis polynomial x^i (1+x)^m.
fn gamma_basis(i: u32, m: u32) -> MultiPoly {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k] += v;
            next[k + 1] += v;
        }
        row = next;
    }
    MultiPoly::from_terms(
        row.into_iter()
            .enumerate()
            .map(|(k, c)| (Mono::xpow(i + k as u32), c)),
    )
}

/// Expands `p` in the basis x^i (1+x)^(n-1-2i) for 0 <= i <= (n-1)/2,
/// peeling coefficients from the lowest power of x upward. Fails when the
/// x-degree exceeds n-1 or a nonzero residue remains.
pub fn gamma_expand(p: &MultiPoly, n: usize) -> Result<Vec<MultiPoly>> {
    if n == 0 {
        return Err(Error::Precondition("gamma basis needs n >= 1"));
    }
    if p.x_degree().unwrap_or(0) as usize > n - 1 {
        return Err(Error::Precondition("x-degree exceeds n-1"));
    }
    let top = (n - 1) / 2;
    let mut residual = p.clone();
    let mut out = Vec::with_capacity(top + 1);
    for i in 0..=top as u32 {
        let gi = residual.coeff_x(i);
        residual = residual.sub(&gi.mul(&gamma_basis(i, (n - 1) as u32 - 2 * i)));
        out.push(gi);
    }
    if !residual.is_zero() {
        return Err(Error::NotInGammaBasis);
    }
    Ok(out)
}

/// Rebuilds sum_i gamma[i] x^i (1+x)^(n-1-2i).
pub fn gamma_reconstruct(gammas: &[MultiPoly], n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (i, g) in gammas.iter().enumerate() {
        let i = i as u32;
        out = out.add(&g.mul(&gamma_basis(i, (n - 1) as u32 - 2 * i)));
    }
    out
}

/// Peak polynomial of the symmetric group in x.
pub fn pk_poly(n: usize) -> Result<MultiPoly> {
    pk_poly_capped(n, DEFAULT_MAX_N)
}

pub fn pk_poly_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    perm_sum(n, cap, |s| Some(Mono::xpow(s.statistics().pk as u32)))
}

/// Mix polynomial of the symmetric group in x.
pub fn mix_poly(n: usize) -> Result<MultiPoly> {
    mix_poly_capped(n, DEFAULT_MAX_N)
}

pub fn mix_poly_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    perm_sum(n, cap, |s| Some(Mono::xpow(mix(s.oneline()) as u32)))
}

/// Checks that peaks and mixes are equidistributed and that the peak
/// counts expand the doubled descent polynomial:
/// 2^(n-1) A_n(x) = sum_i 4^i #{pk = i} x^i (1+x)^(n-1-2i).
pub fn pk_mix_check(n: usize) -> Result<bool> {
    pk_mix_check_capped(n, DEFAULT_MAX_N)
}

pub fn pk_mix_check_capped(n: usize, cap: usize) -> Result<bool> {
    let pk = pk_poly_capped(n, cap)?;
    let mixp = mix_poly_capped(n, cap)?;
    if pk != mixp {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let lhs = eulerian_capped(n, cap)?.scale(&(BigInt::one() << (n - 1)));
    let mut rhs = MultiPoly::zero();
    for (m, c) in pk.terms() {
        let weighted = c * (BigInt::one() << (2 * m.x));
        rhs = rhs.add(&gamma_basis(m.x, (n - 1) as u32 - 2 * m.x).scale(&weighted));
    }
    Ok(lhs == rhs)
}

/// Left side of the orbit identity: over permutations without double
/// descents, x marks descents, t right minima that are double ascents,
/// alpha lmi + rmi - 2.
pub fn ddfree_poly(n: usize) -> Result<MultiPoly> {
    ddfree_poly_capped(n, DEFAULT_MAX_N)
}

pub fn ddfree_poly_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    perm_sum(n, cap, |s| {
        if s.has_double_descent() {
            return None;
        }
        let st = s.statistics();
        Some(Mono::new(
            st.rmida as u32,
            (st.lmi + st.rmi - 2) as u32,
            st.des as u32,
        ))
    })
}

/// Right side of the orbit identity: over representative-form
/// permutations, x marks descents, t right minima that are double
/// ascents, alpha rmi - 1.
pub fn representative_poly(n: usize) -> Result<MultiPoly> {
    representative_poly_capped(n, DEFAULT_MAX_N)
}

pub fn representative_poly_capped(n: usize, cap: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for s in enumerate_capped(n, cap)? {
        if s.has_double_descent() || !actions::is_representative_form(&s)? {
            continue;
        }
        let st = s.statistics();
        out.add_term(
            Mono::new(st.rmida as u32, (st.rmi - 1) as u32, st.des as u32),
            BigInt::one(),
        );
    }
    Ok(out)
}

/// The orbit identity: the dd-free sum equals the representative sum with
/// every x^i coefficient doubled i times.
pub fn orbit_identity_check(n: usize) -> Result<bool> {
    orbit_identity_check_capped(n, DEFAULT_MAX_N)
}

pub fn orbit_identity_check_capped(n: usize, cap: usize) -> Result<bool> {
    Ok(ddfree_poly_capped(n, cap)? == representative_poly_capped(n, cap)?.double_per_x())
}

type SeriesCoef = BTreeMap<(u32, u32), BigRational>;

/// Truncated z-expansion of exp(alpha (t-1) z) / (1 - sin z)^alpha, with
/// exact rational coefficients in t and alpha.
pub struct RationalSeries {
    coeffs: Vec<SeriesCoef>,
}

impl RationalSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// n! times the z^n coefficient, which must be an integer polynomial.
    pub fn coefficient_poly(&self, n: usize) -> Result<MultiPoly> {
        if n >= self.coeffs.len() {
            return Err(Error::PositionOutOfRange(n));
        }
        let scale = BigRational::from_integer(factorial(n));
        let mut out = MultiPoly::zero();
        for (&(t, alpha), c) in &self.coeffs[n] {
            let v = c * &scale;
            if !v.denom().is_one() {
                return Err(Error::Internal(format!(
                    "coefficient of z^{n} t^{t} alpha^{alpha} is not integral"
                )));
            }
            out.add_term(Mono::new(t, alpha, 0), v.numer().clone());
        }
        Ok(out)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Truncated product of two scalar z-series.
fn z_mul(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Expands exp(alpha (t-1) z) / (1 - sin z)^alpha up to z^order.
pub fn series_expand(order: usize) -> Result<RationalSeries> {
    series_expand_capped(order, DEFAULT_MAX_ORDER)
}

pub fn series_expand_capped(order: usize, cap: usize) -> Result<RationalSeries> {
    if order > cap {
        return Err(Error::CapExceeded { n: order, cap });
    }
    // sin z.
    let mut sin = vec![BigRational::zero(); order + 1];
    let mut sign = BigInt::one();
    for k in (1..=order).step_by(2) {
        sin[k] = BigRational::new(sign.clone(), factorial(k));
        sign = -sign;
    }
    // m = -log(1 - sin z) = sum_j (sin z)^j / j; (sin z)^j starts at z^j.
    let mut m = vec![BigRational::zero(); order + 1];
    let mut sin_pow = vec![BigRational::zero(); order + 1];
    sin_pow[0] = BigRational::one();
    for j in 1..=order {
        sin_pow = z_mul(&sin_pow, &sin, order);
        for (c, s) in m.iter_mut().zip(&sin_pow) {
            *c += s / rat(j as i64);
        }
    }
    // (1 - sin z)^(-alpha) = exp(alpha m) = sum_k alpha^k m^k / k!.
    let mut g: Vec<SeriesCoef> = vec![BTreeMap::new(); order + 1];
    let mut m_pow = vec![BigRational::zero(); order + 1];
    m_pow[0] = BigRational::one();
    for k in 0..=order {
        if k > 0 {
            m_pow = z_mul(&m_pow, &m, order);
        }
        let kfact = BigRational::from_integer(factorial(k));
        for (deg, c) in m_pow.iter().enumerate() {
            if !c.is_zero() {
                *g[deg].entry((0, k as u32)).or_insert_with(BigRational::zero) += c / &kfact;
            }
        }
    }
    // exp(alpha (t-1) z): the z^m coefficient is alpha^m (t-1)^m / m!.
    let mut f: Vec<SeriesCoef> = vec![BTreeMap::new(); order + 1];
    for deg in 0..=order {
        let mfact = BigRational::from_integer(factorial(deg));
        // (t-1)^deg expanded with binomials from a Pascal row.
        let mut row = vec![BigInt::one()];
        for _ in 0..deg {
            let mut next = vec![BigInt::zero(); row.len() + 1];
            for (k, v) in row.iter().enumerate() {
                next[k] += v;
                next[k + 1] += v;
            }
            row = next;
        }
        for (j, binom) in row.iter().enumerate() {
            let sign = if (deg - j) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            f[deg].insert(
                (j as u32, deg as u32),
                BigRational::new(binom * sign, BigInt::one()) / &mfact,
            );
        }
    }
    // Cauchy product h = f * g.
    let mut h: Vec<SeriesCoef> = vec![BTreeMap::new(); order + 1];
    for a in 0..=order {
        for b in 0..=order - a {
            for (&(t1, a1), c1) in &f[a] {
                for (&(t2, a2), c2) in &g[b] {
                    let v = c1 * c2;
                    if !v.is_zero() {
                        *h[a + b]
                            .entry((t1 + t2, a1 + a2))
                            .or_insert_with(BigRational::zero) += v;
                    }
                }
            }
        }
    }
    for coef in &mut h {
        coef.retain(|_, v| !v.is_zero());
    }
    Ok(RationalSeries { coeffs: h })
}
