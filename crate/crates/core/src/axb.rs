//! The ax+b group over `Q`: matrices `[[1, b], [0, a]]` with `a ≠ 0`, and
//! the subgroup `H_P` of matrices with `b ∈ A_P` and `a ∈ A_P*`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{ArithError, Error, Result};
use crate::par;
use crate::rational::Rational;

/// `[[1, b], [0, a]]`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxbElement {
    b: Rational,
    a: Rational,
}

impl AxbElement {
    pub fn new(b: Rational, a: Rational) -> Result<AxbElement> {
        if a.is_zero() {
            return Err(Error::Membership("a must be nonzero".into()));
        }
        Ok(AxbElement { b, a })
    }

    pub fn identity() -> AxbElement {
        AxbElement { b: Rational::ZERO, a: Rational::ONE }
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn matrix(&self) -> [[Rational; 2]; 2] {
        [[Rational::ONE, self.b], [Rational::ZERO, self.a]]
    }

    pub fn is_identity(&self) -> bool {
        *self == AxbElement::identity()
    }
}

impl fmt::Display for AxbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.a)
    }
}

/// Parses `"b,a"`.
impl FromStr for AxbElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxbElement> {
        let (b, a) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"b,a\", got {s:?}")))?;
        AxbElement::new(b.trim().parse()?, a.trim().parse()?)
    }
}

/// `(b1, a1)(b2, a2) = (b2 + b1 a2, a1 a2)`
pub fn axb_mul(x: &AxbElement, y: &AxbElement) -> Result<AxbElement> {
    Ok(AxbElement { b: y.b.add(&x.b.mul(&y.a)?)?, a: x.a.mul(&y.a)? })
}

/// `(b, a)⁻¹ = (-b/a, 1/a)`
pub fn axb_inv(x: &AxbElement) -> Result<AxbElement> {
    Ok(AxbElement { b: x.b.div(&x.a)?.neg(), a: x.a.recip()? })
}

/// `x⁻¹ h x`
pub fn conjugate(h: &AxbElement, x: &AxbElement) -> Result<AxbElement> {
    axb_mul(&axb_mul(&axb_inv(x)?, h)?, x)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: Vec<i128>,
}

fn is_prime(n: i128) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl PrimeSet {
    pub fn new(primes: &[i128]) -> Result<PrimeSet> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(PrimeSet { primes })
    }

    pub fn primes(&self) -> &[i128] {
        &self.primes
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: i128) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    fn coprime(&self, n: i128) -> bool {
        self.primes.iter().all(|p| n % p != 0)
    }

    /// Largest divisor of `n` built from primes in the set.
    pub fn p_part(&self, n: i128) -> i128 {
        let mut n = n.abs();
        let mut out = 1;
        for &p in &self.primes {
            while n % p == 0 {
                n /= p;
                out *= p;
            }
        }
        out
    }

    /// `A_P`: reduced denominator coprime to `P`.
    pub fn in_ring(&self, r: &Rational) -> bool {
        self.coprime(r.denom())
    }

    /// `A_P*`: numerator and denominator coprime to `P`.
    pub fn is_unit(&self, r: &Rational) -> bool {
        !r.is_zero() && self.coprime(r.numer()) && self.coprime(r.denom())
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

pub fn in_hp(g: &AxbElement, p: &PrimeSet) -> bool {
    p.in_ring(&g.b) && p.is_unit(&g.a)
}

/// A triple `(x, h, k)` with `h, k ∈ H_P` and
/// `(x⁻¹hx)⁻¹ k (x⁻¹hx) ∉ H_P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonSubnormalCertificate {
    pub x: AxbElement,
    pub h: AxbElement,
    pub k: AxbElement,
    pub result: AxbElement,
    pub result_in_hp: bool,
}

impl NonSubnormalCertificate {
    pub fn certifies(&self) -> bool {
        !self.result_in_hp
    }
}

/// The triple with `x = diag(1, a)`, `h = [[1,1],[0,1]]`, `k = diag(1, -1)`.
pub fn conjugation_triple(primes: &PrimeSet, a: Rational) -> Result<NonSubnormalCertificate> {
    let x = AxbElement::new(Rational::ZERO, a)?;
    let h = AxbElement::new(Rational::ONE, Rational::ONE)?;
    let k = AxbElement::new(Rational::ZERO, Rational::from_int(-1))?;
    let y = conjugate(&h, &x)?;
    let result = axb_mul(&axb_mul(&axb_inv(&y)?, &k)?, &y)?;
    Ok(NonSubnormalCertificate { x, h, k, result, result_in_hp: in_hp(&result, primes) })
}

/// Uses `a = 1/(2p)`, giving `(1/p, -1)`.
pub fn prop142_witness(primes: &PrimeSet, p: i128) -> Result<NonSubnormalCertificate> {
    if !primes.contains(p) {
        return Err(Error::Membership(format!("{p} is not in P = {primes}")));
    }
    conjugation_triple(primes, Rational::new(1, 2 * p)?)
}

/// `h' = (η', ξ')`, `k' = (ν', µ')` with `x⁻¹ h x k = k' x⁻¹ h' x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSolution {
    pub h_prime: AxbElement,
    pub k_prime: AxbElement,
    pub identity_holds: bool,
}

/// Solves for `h', k'` given `h = (η, ξ)`, `k = (ν, µ)` in `H_P`.
pub fn star_solve(primes: &PrimeSet, x: &AxbElement, h: &AxbElement, k: &AxbElement) -> Result<StarSolution> {
    for (name, e) in [("h", h), ("k", k)] {
        if !in_hp(e, primes) {
            return Err(Error::Membership(format!("{name} = {e} is not in H_P")));
        }
    }
    let (eta, xi) = (h.b, h.a);
    let (nu, mu) = (k.b, k.a);
    let xi2 = Rational::ONE.add(&xi.sub(&Rational::ONE)?.mul(&mu)?)?;
    if xi2.is_zero() {
        return Err(Error::Membership(format!("ξ' = 0 for h = {h}, k = {k}")));
    }
    let mu2 = xi.mul(&mu)?.div(&xi2)?;
    let eta2 = eta.mul(&mu)?;
    let nu2 = nu.div(&xi2)?;
    let h_prime = AxbElement::new(eta2, xi2)?;
    let k_prime = AxbElement::new(nu2, mu2)?;
    for (name, e) in [("h'", &h_prime), ("k'", &k_prime)] {
        if !in_hp(e, primes) {
            return Err(Error::Membership(format!(
                "{name} = {e} is not in H_P for x = {x}, h = {h}, k = {k}"
            )));
        }
    }
    let lhs = axb_mul(&conjugate(h, x)?, k)?;
    let rhs = axb_mul(&k_prime, &conjugate(&h_prime, x)?)?;
    Ok(StarSolution { h_prime, k_prime, identity_holds: lhs == rhs })
}

pub const FUZZ_BOUND: i128 = 1 << 20;

fn sample_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn coprime_sample(rng: &mut ChaCha8Rng, primes: &PrimeSet) -> i128 {
    loop {
        let n = rng.gen_range(-FUZZ_BOUND..=FUZZ_BOUND);
        if n != 0 && primes.coprime(n) {
            return n;
        }
    }
}

/// Random element of `A_P`.
pub fn sample_ring(rng: &mut ChaCha8Rng, primes: &PrimeSet) -> Result<Rational> {
    let n = rng.gen_range(-FUZZ_BOUND..=FUZZ_BOUND);
    let d = coprime_sample(rng, primes).abs();
    Rational::new(n, d)
}

/// Random element of `A_P*`.
pub fn sample_unit(rng: &mut ChaCha8Rng, primes: &PrimeSet) -> Result<Rational> {
    let n = coprime_sample(rng, primes);
    let d = coprime_sample(rng, primes).abs();
    Rational::new(n, d)
}

/// Random element of the whole group.
pub fn sample_group(rng: &mut ChaCha8Rng) -> Result<AxbElement> {
    let b = Rational::new(rng.gen_range(-FUZZ_BOUND..=FUZZ_BOUND), rng.gen_range(1..=FUZZ_BOUND))?;
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-FUZZ_BOUND..=FUZZ_BOUND);
    }
    AxbElement::new(b, Rational::new(n, rng.gen_range(1..=FUZZ_BOUND))?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFuzzReport {
    pub seed: u64,
    pub samples: usize,
    pub passed: usize,
    /// First failing sample with its message.
    pub failure: Option<(usize, String)>,
}

impl StarFuzzReport {
    pub fn holds(&self) -> bool {
        self.passed == self.samples && self.failure.is_none()
    }
}

/// Seeded fuzz of `star_solve` on random `x ∈ G` and `h, k ∈ H_P`.
/// Overflow or a failed membership check counts as a failure.
pub fn star_fuzz(primes: &PrimeSet, seed: u64, samples: usize) -> StarFuzzReport {
    let outcomes = par::map_range(samples, |i| -> std::result::Result<(), String> {
        let mut rng = sample_rng(seed, i);
        let mut run = || -> Result<bool> {
            let x = sample_group(&mut rng)?;
            let h = AxbElement::new(sample_ring(&mut rng, primes)?, sample_unit(&mut rng, primes)?)?;
            let k = AxbElement::new(sample_ring(&mut rng, primes)?, sample_unit(&mut rng, primes)?)?;
            Ok(star_solve(primes, &x, &h, &k)?.identity_holds)
        };
        match run() {
            Ok(true) => Ok(()),
            Ok(false) => Err("identity x⁻¹hxk = k'x⁻¹h'x fails".into()),
            Err(e) => Err(e.to_string()),
        }
    });
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let failure = outcomes
        .into_iter()
        .enumerate()
        .find_map(|(i, o)| o.err().map(|e| (i, e)));
    StarFuzzReport { seed, samples, passed, failure }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> Result<i128> {
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Arith(ArithError::Overflow))
}

fn euler_phi(mut n: i128) -> i128 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1 || m == 1).then(|| s0.rem_euclid(m))
}

/// Reduction `A_P → Z/q` for `q` a product of primes in `P`.
pub fn reduce_mod(r: &Rational, q: i128) -> Result<i128> {
    let inv = mod_inverse(r.denom(), q)
        .ok_or_else(|| Error::Membership(format!("{r} has a denominator not invertible mod {q}")))?;
    let n = r.numer().rem_euclid(q);
    n.checked_mul(inv)
        .map(|v| v.rem_euclid(q))
        .ok_or(Error::Arith(ArithError::Overflow))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeWitnessReport {
    pub x: AxbElement,
    pub seed: u64,
    /// Common `P`-part of the denominators of `a` and `b`.
    pub q: i128,
    /// `|G_q| = q φ(q)`, a bound on the index of the kernel in `H_P`.
    pub index_bound: i128,
    pub samples: usize,
    /// Kernel samples landing in `H_P ∩ H_P^{x⁻¹}`.
    pub passed: usize,
    /// Sampled `ξ = 1 + qξ₀` that were not units and got redrawn.
    pub redrawn: usize,
    /// Reduction mod `q` is additive and multiplicative on every sampled pair.
    pub reduction_is_homomorphism: bool,
}

impl HeckeWitnessReport {
    pub fn holds(&self) -> bool {
        self.passed == self.samples && self.reduction_is_homomorphism
    }
}

/// Samples `(η, ξ) = (qη₀, 1 + qξ₀)` from the kernel of reduction mod `q` and
/// checks `ηa + (1 − ξ)b ∈ A_P`, i.e. membership in `H_P ∩ H_P^{x⁻¹}`.
pub fn hecke_witness_141(x: &AxbElement, primes: &PrimeSet, samples: usize, seed: u64) -> Result<HeckeWitnessReport> {
    let q = lcm(primes.p_part(x.a.denom()), primes.p_part(x.b.denom()))?;
    let qr = Rational::new(q, 1)?;
    let outcomes = par::try_map_range(samples, |i| -> Result<(bool, usize, bool)> {
        let mut rng = sample_rng(seed, i);
        let eta = qr.mul(&sample_ring(&mut rng, primes)?)?;
        let mut redrawn = 0;
        let xi = loop {
            let xi = Rational::ONE.add(&qr.mul(&sample_ring(&mut rng, primes)?)?)?;
            if primes.is_unit(&xi) {
                break xi;
            }
            redrawn += 1;
        };
        let h = AxbElement::new(eta, xi)?;
        let c = eta.mul(&x.a)?.add(&Rational::ONE.sub(&xi)?.mul(&x.b)?)?;
        debug_assert_eq!(conjugate(&h, x)?.b, c);
        let member = in_hp(&h, primes) && primes.in_ring(&c);
        let (u, v) = (sample_ring(&mut rng, primes)?, sample_ring(&mut rng, primes)?);
        let (ru, rv) = (reduce_mod(&u, q)?, reduce_mod(&v, q)?);
        let hom = reduce_mod(&u.add(&v)?, q)? == (ru + rv).rem_euclid(q)
            && reduce_mod(&u.mul(&v)?, q)? == (ru * rv).rem_euclid(q)
            && reduce_mod(&eta, q)? == 0
            && reduce_mod(&xi, q)? == 1 % q;
        Ok((member, redrawn, hom))
    })?;
    Ok(HeckeWitnessReport {
        x: *x,
        seed,
        q,
        index_bound: q * euler_phi(q),
        samples,
        passed: outcomes.iter().filter(|o| o.0).count(),
        redrawn: outcomes.iter().map(|o| o.1).sum(),
        reduction_is_homomorphism: outcomes.iter().all(|o| o.2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn e(s: &str) -> AxbElement {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = e("3/4,-2/5");
        assert!(axb_mul(&x, &axb_inv(&x).unwrap()).unwrap().is_identity());
        let h = e("7,1/3");
        let c = conjugate(&h, &x).unwrap();
        assert_eq!(c.a(), q("1/3"));
        // ηa + (1 − ξ)b
        assert_eq!(c.b(), q("7").mul(&q("-2/5")).unwrap().add(&q("2/3").mul(&q("3/4")).unwrap()).unwrap());
        assert!(AxbElement::new(q("1"), q("0")).is_err());
        assert!("1".parse::<AxbElement>().is_err());
    }

    #[test]
    fn membership() {
        let p2 = PrimeSet::new(&[2]).unwrap();
        assert!(in_hp(&AxbElement::identity(), &p2));
        assert!(in_hp(&e("1/3,5/7"), &p2));
        assert!(!in_hp(&e("1/2,1"), &p2));
        assert!(!in_hp(&e("1,2"), &p2));
        assert!(PrimeSet::new(&[4]).is_err());
        assert_eq!(PrimeSet::new(&[3, 2, 3]).unwrap().primes(), &[2, 3]);
    }

    #[test]
    fn non_subnormal_witness() {
        let p2 = PrimeSet::new(&[2]).unwrap();
        let w = prop142_witness(&p2, 2).unwrap();
        assert_eq!(w.result, e("1/2,-1"));
        assert!(w.certifies());
        let p3 = PrimeSet::new(&[3]).unwrap();
        assert_eq!(prop142_witness(&p3, 3).unwrap().result, e("1/3,-1"));
        let sanity = conjugation_triple(&p2, Rational::ONE).unwrap();
        assert_eq!(sanity.result, e("2,-1"));
        assert!(!sanity.certifies());
        assert!(prop142_witness(&p2, 3).is_err());
    }

    #[test]
    fn star_solver() {
        let p2 = PrimeSet::new(&[2]).unwrap();
        let id = AxbElement::identity();
        let s = star_solve(&p2, &e("5,1/2"), &id, &id).unwrap();
        assert!(s.h_prime.is_identity() && s.k_prime.is_identity() && s.identity_holds);
        let s = star_solve(&p2, &e("0,1/2"), &e("1,1"), &e("0,3/5")).unwrap();
        assert!(s.identity_holds);
        let s = star_solve(&p2, &e("1/8,3"), &e("1/3,7/9"), &e("2,1")).unwrap();
        assert_eq!(s.h_prime.a(), q("7/9"));
        assert_eq!(s.k_prime.a(), Rational::ONE);
        assert!(star_solve(&p2, &id, &e("1/2,1"), &id).is_err());
        let r = star_fuzz(&p2, 11, 200);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn hecke_witness() {
        let p2 = PrimeSet::new(&[2]).unwrap();
        let r = hecke_witness_141(&e("0,1/2"), &p2, 100, 7).unwrap();
        assert_eq!((r.q, r.index_bound), (2, 2));
        assert!(r.holds());
        let r = hecke_witness_141(&e("1/4,1/2"), &p2, 50, 7).unwrap();
        assert_eq!((r.q, r.index_bound), (4, 8));
        assert!(r.holds());
        let r = hecke_witness_141(&e("1/3,5"), &p2, 10, 1).unwrap();
        assert_eq!((r.q, r.index_bound), (1, 1));
        assert!(r.holds());
        let p23 = PrimeSet::new(&[2, 3]).unwrap();
        let r = hecke_witness_141(&e("1/6,1/9"), &p23, 50, 3).unwrap();
        assert_eq!(r.q, 18);
        assert!(r.holds());
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod(&q("1/3"), 4).unwrap(), 3);
        assert_eq!(reduce_mod(&q("-5"), 4).unwrap(), 3);
        assert!(reduce_mod(&q("1/2"), 4).is_err());
        assert_eq!(reduce_mod(&q("7/5"), 1).unwrap(), 0);
    }
}
