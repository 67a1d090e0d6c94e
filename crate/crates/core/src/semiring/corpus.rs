use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::quotient::{quotient, CongruencePresentation, QuotientOutcome};
use super::FiniteSemiring;
use crate::linalg::IntVector;
use crate::monoid::AffineMonoid;
use crate::poly::{Domain, SparsePoly};
use crate::Result;

/// All commutative semirings on at most `max_order` labelled elements, up
/// to table identity (no isomorphism reduction), in deterministic order.
/// Exhaustive only at desk scale: max_order ≤ 4.
pub fn enumerate_exhaustive(max_order: usize) -> Vec<FiniteSemiring> {
    assert!(
        (1..=4).contains(&max_order),
        "exhaustive enumeration supports orders 1..=4"
    );
    let mut out = Vec::new();
    for m in 1..=max_order {
        let semigroups = commutative_semigroups(m);
        for add in &semigroups {
            enumerate_muls(m, add, &mut |mul| {
                out.push(FiniteSemiring::from_checked_tables(
                    add.clone(),
                    mul.to_vec(),
                ));
            });
        }
    }
    out
}

/// All commutative, associative operation tables on {0..m-1}.
fn commutative_semigroups(m: usize) -> Vec<Vec<Vec<usize>>> {
    let cells: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i..m).map(move |j| (i, j)))
        .collect();
    let mut table = vec![vec![0usize; m]; m];
    let mut out = Vec::new();
    fill_assoc(m, &cells, 0, &mut table, &mut out);
    out
}

fn fill_assoc(
    m: usize,
    cells: &[(usize, usize)],
    pos: usize,
    table: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if pos == cells.len() {
        // Full associativity check (partial checks below prune most).
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return;
                    }
                }
            }
        }
        out.push(table.clone());
        return;
    }
    let (i, j) = cells[pos];
    for v in 0..m {
        table[i][j] = v;
        table[j][i] = v;
        if partial_assoc_ok(m, cells, pos, table) {
            fill_assoc(m, cells, pos + 1, table, out);
        }
    }
    // Restore a sentinel-free state is unnecessary: the next iteration
    // overwrites, and callers never read past `pos`.
}

/// Checks the associativity instances whose entries are all already
/// assigned (cells up to `pos` inclusive).
fn partial_assoc_ok(m: usize, cells: &[(usize, usize)], pos: usize, table: &[Vec<usize>]) -> bool {
    let assigned = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        cells[..=pos].iter().any(|&c| c == key)
    };
    for a in 0..m {
        for b in 0..m {
            if !assigned(a, b) {
                continue;
            }
            for c in 0..m {
                let ab = table[a][b];
                let left_ok = assigned(ab, c);
                if !assigned(b, c) {
                    continue;
                }
                let bc = table[b][c];
                if left_ok && assigned(a, bc) && table[ab][c] != table[a][bc] {
                    return false;
                }
            }
        }
    }
    true
}

/// Backtracking enumeration of multiplication tables compatible with a
/// fixed addition table: commutative, associative, distributive.
fn enumerate_muls(m: usize, add: &[Vec<usize>], emit: &mut dyn FnMut(&[Vec<usize>])) {
    let cells: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i..m).map(move |j| (i, j)))
        .collect();
    let mut mul = vec![vec![0usize; m]; m];
    fill_mul(m, add, &cells, 0, &mut mul, emit);
}

fn fill_mul(
    m: usize,
    add: &[Vec<usize>],
    cells: &[(usize, usize)],
    pos: usize,
    mul: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if pos == cells.len() {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]
                        || mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]
                    {
                        return;
                    }
                }
            }
        }
        emit(mul);
        return;
    }
    let (i, j) = cells[pos];
    for v in 0..m {
        mul[i][j] = v;
        mul[j][i] = v;
        if partial_mul_ok(m, add, cells, pos, mul) {
            fill_mul(m, add, cells, pos + 1, mul, emit);
        }
    }
}

fn partial_mul_ok(
    m: usize,
    add: &[Vec<usize>],
    cells: &[(usize, usize)],
    pos: usize,
    mul: &[Vec<usize>],
) -> bool {
    let assigned = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        cells[..=pos].iter().any(|&c| c == key)
    };
    for a in 0..m {
        for b in 0..m {
            if !assigned(a, b) {
                continue;
            }
            let ab = mul[a][b];
            for c in 0..m {
                if assigned(b, c) {
                    let bc = mul[b][c];
                    if assigned(ab, c) && assigned(a, bc) && mul[ab][c] != mul[a][bc] {
                        return false;
                    }
                }
                // a(b+c) = ab + ac needs (a, b+c), (a,b), (a,c).
                if assigned(a, add[b][c]) && assigned(a, c) && mul[a][add[b][c]] != add[ab][mul[a][c]]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Configuration for the seeded random corpus of N[C]-quotient semirings.
#[derive(Debug, Clone)]
pub struct RandomCorpusConfig {
    pub seed: u64,
    pub count: usize,
    /// Class cap for each quotient; also bounds every additive period.
    pub size_cap: usize,
}

impl Default for RandomCorpusConfig {
    fn default() -> Self {
        RandomCorpusConfig {
            seed: 42,
            count: 200,
            size_cap: 12,
        }
    }
}

/// Deterministically samples presentations over small free monoids with
/// random relations and keeps those whose quotient succeeds under the cap.
pub fn random_quotient_corpus(cfg: &RandomCorpusConfig) -> Result<Vec<FiniteSemiring>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    let attempt_cap = 60 * cfg.count.max(1);
    while out.len() < cfg.count && attempts < attempt_cap {
        attempts += 1;
        let pres = sample_presentation(&mut rng, cfg.size_cap)?;
        if let QuotientOutcome::Finite(s) = quotient(&pres)? {
            if s.order() >= 1 {
                out.push(s);
            }
        }
    }
    assert_eq!(
        out.len(),
        cfg.count,
        "random corpus generation fell short after {attempts} attempts"
    );
    Ok(out)
}

fn sample_presentation(rng: &mut ChaCha8Rng, size_cap: usize) -> Result<CongruencePresentation> {
    let pattern = rng.gen_range(0..5u32);
    let n0 = AffineMonoid::new(1, &[IntVector::from_i64(&[1])])?;
    let nat = |t: &str| SparsePoly::parse(t, 1, Domain::Naturals).unwrap();
    let pres = match pattern {
        // Additive cyclic: x = 1, i = i + p.
        0 => {
            let i = rng.gen_range(1..=3u64);
            let p = rng.gen_range(1..=9u64);
            let hi = i + p;
            CongruencePresentation {
                monoid: n0,
                relations: vec![
                    (nat("1*x^(1)"), nat("1")),
                    (nat(&i.to_string()), nat(&hi.to_string())),
                ],
                size_cap,
            }
        }
        // Saturating (truncated) naturals: x = 1, k + 1 = k.
        1 => {
            let k = rng.gen_range(1..=8u64);
            CongruencePresentation {
                monoid: n0,
                relations: vec![
                    (nat("1*x^(1)"), nat("1")),
                    (nat(&(k + 1).to_string()), nat(&k.to_string())),
                ],
                size_cap,
            }
        }
        // Additively idempotent with a monomial cycle: 1+1 = 1, x^b = x^a.
        // Elements are then coefficient-free sums of the surviving
        // monomials, so the order stays below 2^b.
        2 => {
            let a = rng.gen_range(0..=1u64);
            let b = rng.gen_range((a + 1)..=3u64);
            CongruencePresentation {
                monoid: n0,
                relations: vec![
                    (nat("2"), nat("1")),
                    (
                        nat(&format!("1*x^({b})")),
                        nat(&format!("1*x^({a})")),
                    ),
                ],
                size_cap,
            }
        }
        // Monomial torsion over a short additive cycle: x^b = x^a,
        // i = i + p. Orders grow like (i+p)^b, so both stay tiny.
        3 => {
            let a = rng.gen_range(0..=1u64);
            let b = a + 1;
            let p = rng.gen_range(1..=2u64);
            CongruencePresentation {
                monoid: n0,
                relations: vec![
                    (
                        nat(&format!("1*x^({b})")),
                        nat(&format!("1*x^({a})")),
                    ),
                    (nat("1"), nat(&(1 + p).to_string())),
                ],
                size_cap,
            }
        }
        // Rank-2 free monoid, idempotent addition, products folded to sums.
        _ => {
            let m2 = AffineMonoid::new(
                2,
                &[IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[0, 1])],
            )?;
            let nat2 = |t: &str| SparsePoly::parse(t, 2, Domain::Naturals).unwrap();
            let mut relations = vec![
                (nat2("2"), nat2("1")),
                (nat2("1*x^(2,0)"), nat2("1*x^(1,0)")),
                (nat2("1*x^(0,2)"), nat2("1*x^(0,1)")),
            ];
            if rng.gen_bool(0.5) {
                relations.push((nat2("1*x^(1,1)"), nat2("1*x^(1,0) + 1*x^(0,1)")));
            } else {
                relations.push((nat2("1*x^(1,1)"), nat2("1*x^(0,1)")));
            }
            CongruencePresentation {
                monoid: m2,
                relations,
                size_cap,
            }
        }
    };
    Ok(pres)
}

/// Combined corpus: every commutative semiring of order ≤ max_order plus
/// `count` seeded random quotient semirings under the class cap.
pub fn enumerate_corpus(
    max_order: usize,
    seed: u64,
    count: usize,
    size_cap: usize,
) -> Result<Vec<FiniteSemiring>> {
    let mut out = enumerate_exhaustive(max_order);
    out.extend(random_quotient_corpus(&RandomCorpusConfig {
        seed,
        count,
        size_cap,
    })?);
    Ok(out)
}

/// Seeded random saturated monoids for the decomposition suites: rank 3,
/// up to `max_gens` generators with entries ≤ `max_entry`.
pub fn random_saturated_monoids(
    seed: u64,
    count: usize,
    rank: usize,
    max_gens: usize,
    max_entry: i64,
) -> Result<Vec<crate::monoid::SaturatedMonoid>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<IntVector> = (0..k)
            .map(|_| {
                IntVector::new(
                    (0..rank)
                        .map(|_| BigInt::from(rng.gen_range(0..=max_entry)))
                        .collect(),
                )
            })
            .collect();
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        let m = AffineMonoid::new(rank, &gens)?;
        out.push(crate::monoid::saturate(&m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent brute force: filter every pair of raw operation tables.
    fn brute_force_count(m: usize) -> usize {
        let cells = (m * m) as u32;
        let all: Vec<Vec<Vec<usize>>> = (0..m.pow(cells))
            .map(|code| {
                let mut c = code;
                (0..m)
                    .map(|_| {
                        (0..m)
                            .map(|_| {
                                let v = c % m;
                                c /= m;
                                v
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        count_semirings(m, &all)
    }

    fn count_semirings(m: usize, all: &[Vec<Vec<usize>>]) -> usize {
        let ok = |t: &Vec<Vec<usize>>| {
            for a in 0..m {
                for b in 0..m {
                    if t[a][b] != t[b][a] {
                        return false;
                    }
                    for c in 0..m {
                        if t[t[a][b]][c] != t[a][t[b][c]] {
                            return false;
                        }
                    }
                }
            }
            true
        };
        let semigroups: Vec<&Vec<Vec<usize>>> = all.iter().filter(|t| ok(t)).collect();
        let mut count = 0;
        for add in &semigroups {
            for mul in &semigroups {
                let distributive = (0..m).all(|a| {
                    (0..m).all(|b| {
                        (0..m).all(|c| mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]])
                    })
                });
                if distributive {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn order_one_gives_the_single_trivial_semiring() {
        let all = enumerate_exhaustive(1);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].order(), 1);
    }

    #[test]
    fn order_two_matches_brute_force_and_contains_references() {
        let all = enumerate_exhaustive(2);
        let order_two = all.iter().filter(|s| s.order() == 2).count();
        assert_eq!(order_two + 1, all.len()); // plus the trivial one
        assert_eq!(order_two, brute_force_count(2));
        let b = FiniteSemiring::boolean();
        let z2 = FiniteSemiring::z_mod(2);
        assert!(all.iter().any(|s| s == &b));
        assert!(all.iter().any(|s| s == &z2));
    }

    #[test]
    fn corpus_is_deterministic_under_seed() {
        let cfg = RandomCorpusConfig {
            seed: 42,
            count: 10,
            size_cap: 12,
        };
        let a = random_quotient_corpus(&cfg).unwrap();
        let b = random_quotient_corpus(&cfg).unwrap();
        assert_eq!(a.len(), 10);
        let tables = |v: &Vec<FiniteSemiring>| {
            v.iter()
                .map(|s| (s.add_table().to_vec(), s.mul_table().to_vec()))
                .collect::<Vec<_>>()
        };
        assert_eq!(tables(&a), tables(&b));
    }

    #[test]
    fn random_monoids_are_reproducible() {
        let a = random_saturated_monoids(7, 5, 3, 4, 4).unwrap();
        let b = random_saturated_monoids(7, 5, 3, 4, 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.hilbert_basis(), y.hilbert_basis());
        }
    }
}
