//! Subrings of Q in canonical (n, P) form: membership, finite generation,
//! additive almost-divisibility, and the positive localisations N_P.
//!
//! A subring R of Q not contained in Z is determined by the positive
//! generator n of R ∩ Z and the set P of primes appearing in denominators:
//! R = { n·k/q : k ∈ Z, q a product of primes from P }, with gcd(n, p) = 1
//! for every p ∈ P.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::util::{extended_gcd, factorize, is_prime};
use crate::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Fraction = BigRational;

/// Parses `num/den` or a bare integer.
pub fn parse_fraction(text: &str) -> Result<Fraction> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

/// Renders `num/den`, or just `num` for integers.
pub fn format_fraction(x: &Fraction) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Height max(|num|, den); the bound used by the closure oracle.
pub fn height(x: &Fraction) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

/// A set of primes: explicit and finite, all primes, or all primes coprime
/// to a modulus (infinite by Euclid's and Dirichlet's theorems).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeSet {
    Explicit { values: Vec<u64> },
    All,
    CoprimeTo { modulus: u64 },
}

impl PrimeSet {
    pub fn explicit(mut values: Vec<u64>) -> Result<PrimeSet> {
        values.sort_unstable();
        values.dedup();
        if let Some(&v) = values.iter().find(|&&v| !is_prime(v)) {
            return Err(Error::Precondition {
                what: "PrimeSet",
                detail: format!("{v} is not prime"),
            });
        }
        Ok(PrimeSet::Explicit { values })
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Explicit { values } => values.binary_search(&p).is_ok(),
            PrimeSet::All => is_prime(p),
            PrimeSet::CoprimeTo { modulus } => is_prime(p) && modulus.gcd(&p) == 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PrimeSet::Explicit { .. })
    }

    /// True iff every prime factor of `q` belongs to the set (so q is a
    /// product of primes from the set; q = 1 is the empty product).
    pub fn divides_fully(&self, q: &BigInt) -> bool {
        factorize(q).iter().all(|(p, _)| {
            p.to_u64().map_or(false, |p64| self.contains(p64))
        })
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::Explicit { values } => write!(f, "{values:?}"),
            PrimeSet::All => write!(f, "all primes"),
            PrimeSet::CoprimeTo { modulus } => write!(f, "primes coprime to {modulus}"),
        }
    }
}

/// Canonical description (n, P) of a subring of Q with R ⊄ Z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSubringDescriptor {
    /// Positive generator of R ∩ Z, as a decimal string in JSON.
    #[serde(with = "bigint_string")]
    pub n: BigInt,
    pub primes: PrimeSet,
}

mod bigint_string {
    use super::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Computes the canonical form of the subring generated by the fractions.
///
/// P is the set of primes dividing any generator denominator, and n is the
/// gcd of the generator numerators: for primes outside P the valuation of
/// any ring element is at least the minimal generator valuation, and the
/// cleared numerators d_i·g_i realise the gcd over Z. Both facts are
/// certified before returning: n is reproduced as an explicit integer
/// combination of the cleared generators, and n/p for each p ∈ P by the
/// combination α·(b_j·g_j) + β·n with α·d + β·p = 1.
pub fn canonical_form(gens: &[Fraction]) -> Result<QSubringDescriptor> {
    let gens: Vec<&Fraction> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    if gens.iter().all(|g| g.denom().is_one()) {
        return Err(Error::IntegerSubring);
    }

    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for g in &gens {
        for (p, _) in factorize(g.denom()) {
            primes.insert(p.to_u64().ok_or_else(|| {
                Error::Precondition {
                    what: "canonical_form",
                    detail: format!("denominator prime {p} exceeds desk scale"),
                }
            })?);
        }
    }
    let prime_set = PrimeSet::explicit(primes.iter().copied().collect())?;

    let n = gens
        .iter()
        .fold(BigInt::zero(), |acc, g| acc.gcd(g.numer()));
    debug_assert!(n.is_positive());

    for &p in &primes {
        let p_big = BigInt::from(p);
        if !n.gcd(&p_big).is_one() {
            return Err(Error::Internal(format!(
                "denominator prime {p} divides the numerator gcd {n}"
            )));
        }
    }

    // Certificate 1: n ∈ R as an explicit combination of cleared
    // generators d_i·g_i (iterated Bezout over the numerators).
    let mut combo = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); gens.len()];
    for (i, g) in gens.iter().enumerate() {
        if combo.is_zero() {
            coeffs[i] = BigInt::one();
            combo = g.numer().clone();
            continue;
        }
        let (gcd, x, y) = extended_gcd(&combo, g.numer());
        for c in coeffs.iter_mut().take(i) {
            *c = &*c * &x;
        }
        coeffs[i] = y;
        combo = gcd;
    }
    // combo = ±n; flip signs if needed.
    if combo != n {
        if -&combo == n {
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        } else {
            return Err(Error::Internal(format!(
                "numerator combination {combo} does not match gcd {n}"
            )));
        }
    }
    let witness: Fraction = gens
        .iter()
        .zip(&coeffs)
        .map(|(g, c)| {
            let cleared = *g * BigRational::from_integer(g.denom().clone()); // = numer
            cleared * BigRational::from_integer(c.clone())
        })
        .sum();
    if witness != BigRational::from_integer(n.clone()) {
        return Err(Error::Internal(
            "Bezout witness for n failed exact verification".into(),
        ));
    }

    // Certificate 2: n/p ∈ R for every p ∈ P, via α·(b_j·g_j) + β·n = n/p
    // where g_j has p in its denominator and α·d + β·p = 1 for d = a_j/n.
    for &p in &primes {
        let p_big = BigInt::from(p);
        let g = gens
            .iter()
            .find(|g| (g.denom() % &p_big).is_zero())
            .expect("p divides some denominator");
        let a_j = g.numer();
        let d = a_j / &n;
        let b_j = g.denom() / &p_big;
        let (one, alpha, beta) = extended_gcd(&d, &p_big);
        if !one.is_one() {
            return Err(Error::Internal(format!(
                "gcd({d}, {p}) is {one}, expected 1"
            )));
        }
        let lhs = BigRational::from_integer(&alpha * &b_j) * *g
            + BigRational::from_integer(&beta * &n);
        let rhs = BigRational::new(n.clone(), p_big.clone());
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "Bezout witness for n/{p} failed exact verification"
            )));
        }
    }

    Ok(QSubringDescriptor {
        n,
        primes: prime_set,
    })
}

/// Membership x ∈ R = {n·k/q}: the denominator factors over P and n
/// divides the numerator.
pub fn member(d: &QSubringDescriptor, x: &Fraction) -> bool {
    d.primes.divides_fully(x.denom()) && (x.numer() % &d.n).is_zero()
}

/// R is finitely generated iff P is finite.
pub fn is_finitely_generated(d: &QSubringDescriptor) -> bool {
    d.primes.is_finite()
}

/// R is additively almost-divisible iff it is not finitely generated.
pub fn is_additively_almost_divisible(d: &QSubringDescriptor) -> bool {
    !is_finitely_generated(d)
}

/// Membership in N_P = {k/q : k ∈ N, q a product of primes from P}.
pub fn np_member(p: &PrimeSet, x: &Fraction) -> bool {
    x.is_positive() && p.divides_fully(x.denom())
}

/// Independent oracle: the set of all ring-expression values over the
/// generators with height ≤ bound, saturated under sums, differences and
/// products. Test-side machinery; exact over word-sized fractions.
pub fn closure_oracle(gens: &[Fraction], height_bound: u64) -> Result<BTreeSet<Fraction>> {
    assert!(height_bound <= 1 << 20, "oracle bound exceeds desk scale");
    let bound = i128::from(height_bound);
    let mut seen: BTreeSet<(i128, i128)> = BTreeSet::new();
    let mut all: Vec<(i128, i128)> = Vec::new();
    for g in gens {
        let f = to_small(g, bound).ok_or_else(|| Error::Precondition {
            what: "closure_oracle",
            detail: format!("generator {g} exceeds the height bound"),
        })?;
        if seen.insert(f) {
            all.push(f);
        }
    }
    // Triangular saturation: each unordered pair is combined exactly once;
    // new values are appended and picked up by the outer index.
    let mut i = 0usize;
    while i < all.len() {
        let a = all[i];
        for j in 0..=i {
            let b = all[j];
            for v in [small_add(a, b), small_sub(a, b), small_sub(b, a), small_mul(a, b)]
                .into_iter()
                .flatten()
            {
                if within(v, bound) && seen.insert(v) {
                    all.push(v);
                }
            }
        }
        i += 1;
    }
    Ok(seen
        .into_iter()
        .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect())
}

fn to_small(x: &Fraction, bound: i128) -> Option<(i128, i128)> {
    let n = x.numer().to_i128()?;
    let d = x.denom().to_i128()?;
    let v = (n, d);
    within(v, bound).then_some(v)
}

fn within((n, d): (i128, i128), bound: i128) -> bool {
    n.abs() <= bound && d <= bound
}

fn reduce(mut n: i128, mut d: i128) -> (i128, i128) {
    debug_assert!(d > 0);
    let g = n.abs().gcd(&d);
    if g > 1 {
        n /= g;
        d /= g;
    }
    (n, d)
}

fn small_add((a, b): (i128, i128), (c, d): (i128, i128)) -> Option<(i128, i128)> {
    Some(reduce(
        a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?,
        b.checked_mul(d)?,
    ))
}

fn small_sub(x: (i128, i128), y: (i128, i128)) -> Option<(i128, i128)> {
    small_add(x, (-y.0, y.1))
}

fn small_mul((a, b): (i128, i128), (c, d): (i128, i128)) -> Option<(i128, i128)> {
    Some(reduce(a.checked_mul(c)?, b.checked_mul(d)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(s: &str) -> Fraction {
        parse_fraction(s).unwrap()
    }

    #[test]
    fn half_generates_z_localised_at_two() {
        let d = canonical_form(&[frac("1/2")]).unwrap();
        assert_eq!(d.n, BigInt::one());
        assert_eq!(d.primes, PrimeSet::explicit(vec![2]).unwrap());
        assert!(member(&d, &frac("3/4")));
        assert!(member(&d, &frac("7")));
        assert!(!member(&d, &frac("1/6")));
    }

    #[test]
    fn five_halves_keeps_numerators_divisible_by_five() {
        let d = canonical_form(&[frac("5/2")]).unwrap();
        assert_eq!(d.n, BigInt::from(5));
        assert_eq!(d.primes, PrimeSet::explicit(vec![2]).unwrap());
        assert!(member(&d, &frac("5/8")));
        assert!(!member(&d, &frac("1/2")));
        assert!(member(&d, &frac("10")));
        assert!(!member(&d, &frac("1")));
    }

    #[test]
    fn two_generators_with_coprime_denominators() {
        let d = canonical_form(&[frac("1/2"), frac("1/3")]).unwrap();
        assert_eq!(d.n, BigInt::one());
        assert_eq!(d.primes, PrimeSet::explicit(vec![2, 3]).unwrap());
    }

    #[test]
    fn integer_generators_are_rejected() {
        assert!(matches!(
            canonical_form(&[frac("3"), frac("4")]),
            Err(Error::IntegerSubring)
        ));
        assert!(matches!(canonical_form(&[]), Err(Error::NoGenerators)));
        assert!(matches!(
            canonical_form(&[frac("0")]),
            Err(Error::NoGenerators)
        ));
    }

    #[test]
    fn finite_generation_matches_prime_set_kind() {
        let d = canonical_form(&[frac("1/2"), frac("1/3")]).unwrap();
        assert!(is_finitely_generated(&d));
        assert!(!is_additively_almost_divisible(&d));
        let all = QSubringDescriptor {
            n: BigInt::one(),
            primes: PrimeSet::All,
        };
        assert!(!is_finitely_generated(&all));
        assert!(is_additively_almost_divisible(&all));
        assert!(member(&all, &frac("22/7")));
        let coprime = QSubringDescriptor {
            n: BigInt::one(),
            primes: PrimeSet::CoprimeTo { modulus: 6 },
        };
        assert!(is_additively_almost_divisible(&coprime));
        assert!(member(&coprime, &frac("3/35")));
        assert!(!member(&coprime, &frac("1/2")));
    }

    #[test]
    fn np_membership() {
        let p25 = PrimeSet::explicit(vec![2, 5]).unwrap();
        assert!(np_member(&p25, &frac("3/10")));
        assert!(!np_member(&PrimeSet::explicit(vec![2]).unwrap(), &frac("1/3")));
        assert!(np_member(&p25, &frac("7")));
        assert!(!np_member(&p25, &frac("-1/2")));
    }

    #[test]
    fn oracle_for_one_half() {
        let set = closure_oracle(&[frac("1/2")], 16).unwrap();
        for v in ["1", "1/2", "1/4", "3/4"] {
            assert!(set.contains(&frac(v)), "{v} missing");
        }
    }

    #[test]
    fn oracle_for_five_halves_excludes_one() {
        let set = closure_oracle(&[frac("5/2")], 32).unwrap();
        for v in ["5", "5/2", "25/4", "5/4"] {
            assert!(set.contains(&frac(v)), "{v} missing");
        }
        assert!(!set.contains(&frac("1")));
    }

    #[test]
    fn oracle_for_integer_generator() {
        let set = closure_oracle(&[frac("2")], 8).unwrap();
        for v in ["-2", "0", "2", "4", "6", "8"] {
            assert!(set.contains(&frac(v)), "{v} missing");
        }
        assert!(!set.contains(&frac("1")));
    }

    #[test]
    fn oracle_agrees_with_member_two_sided() {
        // Soundness and bounded completeness of the descriptor against the
        // brute-force ring closure.
        for gens in [vec![frac("5/2")], vec![frac("10/3"), frac("15/7")]] {
            let d = canonical_form(&gens).unwrap();
            let set = closure_oracle(&gens, 1 << 10).unwrap();
            for v in &set {
                assert!(member(&d, v), "oracle value {v} rejected by ({}, {})", d.n, d.primes);
            }
            // Every claimed member of small height appears in the closure.
            for num in -24i64..=24 {
                for den in 1i64..=24 {
                    let x = BigRational::new(BigInt::from(num), BigInt::from(den));
                    if member(&d, &x) {
                        assert!(set.contains(&x), "member {x} missing from the oracle closure");
                    }
                }
            }
        }
    }

    #[test]
    fn fraction_string_round_trip() {
        for s in ["5/2", "-3/4", "7", "0"] {
            let f = frac(s);
            assert_eq!(format_fraction(&f), s);
        }
    }
}
