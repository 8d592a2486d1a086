//! Divisibility obstructions to clock weak factors.
//!
//! If `C_q^{(k)}` is a weak factor of `F`, every periodic point of `F` has
//! least period divisible by `q`. Constant configurations give the cycles
//! of `φ_F`, so `q | g_F`; torus state spaces give further periodic points
//! and can only shrink the gcd. A verdict is `Excluded` exactly when some
//! computed gcd is not a multiple of `q`.

use serde::{Deserialize, Serialize};

use crate::ca::{cell_count, CellularAutomaton, Symbol, TorusConfig};
use crate::cycles::{cycle_report, cycle_report_table, for_each_cycle, gcd, CycleReport};
use crate::error::{Error, Result};

/// Default state budget for torus enumeration.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// Successor tables are `u32`-indexed.
const MAX_STATES: u128 = 1 << 32;

/// Cycle report of `φ_F` on the alphabet; its `g` is `g_F`.
pub fn g_of(ca: &CellularAutomaton) -> CycleReport {
    let phi = ca.phi_map();
    cycle_report(phi.len(), |a| phi.apply(a as Symbol) as usize)
        .expect("φ maps the alphabet into itself")
}

/// Cycle report over every configuration on one torus shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusReport {
    pub shape: Vec<usize>,
    pub report: CycleReport,
}

/// `|A|^(cells)`, saturating at `u128::MAX`.
pub fn state_space_size(alphabet_size: u32, shape: &[usize]) -> Result<u128> {
    let cells = cell_count(shape)?;
    let mut n: u128 = 1;
    for _ in 0..cells {
        n = n.saturating_mul(alphabet_size as u128);
        if n == u128::MAX {
            break;
        }
    }
    Ok(n)
}

fn check_budget(ca: &CellularAutomaton, shape: &[usize], cap: u64) -> Result<usize> {
    if shape.len() != ca.dimension() {
        return Err(Error::InvalidShape {
            shape: shape.to_vec(),
            reason: format!("expected {} axes", ca.dimension()),
        });
    }
    let required = state_space_size(ca.alphabet_size(), shape)?;
    if required > cap as u128 || required > MAX_STATES {
        return Err(Error::BudgetExceeded {
            required,
            cap: cap.min(MAX_STATES as u64),
        });
    }
    Ok(required as usize)
}

fn fill_successors(
    ca: &CellularAutomaton,
    shape: &[usize],
    first_state: usize,
    out: &mut [u32],
) -> Result<()> {
    let stepper = ca.stepper(shape)?;
    let base = ca.alphabet_size() as u64;
    let mut src = TorusConfig::decode(first_state as u128, ca.alphabet_size(), shape)?.into_cells();
    let mut dst = vec![0; src.len()];
    for slot in out.iter_mut() {
        stepper.step_into(&src, &mut dst);
        *slot = dst.iter().fold(0u64, |acc, &c| acc * base + c as u64) as u32;
        // advance src to the next state code
        for c in src.iter_mut().rev() {
            *c += 1;
            if (*c as u64) < base {
                break;
            }
            *c = 0;
        }
    }
    Ok(())
}

/// Successor table of the global map on all configurations of `shape`,
/// indexed by the row-major mixed-radix state code.
pub fn torus_successor_table(ca: &CellularAutomaton, shape: &[usize], cap: u64) -> Result<Vec<u32>> {
    let states = check_budget(ca, shape, cap)?;
    let mut table = vec![0u32; states];
    const CHUNK: usize = 1 << 12;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        table
            .par_chunks_mut(CHUNK)
            .enumerate()
            .try_for_each(|(i, chunk)| fill_successors(ca, shape, i * CHUNK, chunk))?;
    }
    #[cfg(not(feature = "parallel"))]
    for (i, chunk) in table.chunks_mut(CHUNK).enumerate() {
        fill_successors(ca, shape, i * CHUNK, chunk)?;
    }
    Ok(table)
}

/// Enumerates all configurations of `shape` and decomposes the global map
/// on them into cycles. Each cycle length is the least period of a
/// spatially periodic point of `ca`.
pub fn torus_period_gcd(ca: &CellularAutomaton, shape: &[usize], cap: u64) -> Result<TorusReport> {
    let table = torus_successor_table(ca, shape, cap)?;
    Ok(TorusReport {
        shape: shape.to_vec(),
        report: cycle_report_table(&table)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Excluded,
    Inconclusive,
}

/// Where an excluding divisor came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum Provenance {
    /// Cycle lengths of `φ_F` on the alphabet.
    Alphabet,
    /// Cycle lengths over all configurations of one torus shape.
    Torus { shape: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// A gcd of least periods that `q` fails to divide.
    pub divisor: u64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedShape {
    pub shape: Vec<usize>,
    pub required_states: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub q: u64,
    pub outcome: Outcome,
    /// Present exactly when the outcome is `Excluded`.
    pub certificate: Option<Certificate>,
    pub g_f: u64,
    /// gcd of `g_F` and every analyzed torus gcd.
    pub combined_g: u64,
    pub analyzed_shapes: Vec<Vec<usize>>,
    pub skipped_shapes: Vec<SkippedShape>,
}

impl Verdict {
    pub fn is_excluded(&self) -> bool {
        self.outcome == Outcome::Excluded
    }
}

/// Torus reports for the shapes that fit the budget, plus the skipped ones.
pub fn torus_reports(
    ca: &CellularAutomaton,
    shapes: &[Vec<usize>],
    cap: u64,
) -> Result<(Vec<TorusReport>, Vec<SkippedShape>)> {
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for shape in shapes {
        match torus_period_gcd(ca, shape, cap) {
            Ok(r) => reports.push(r),
            Err(Error::BudgetExceeded { required, .. }) => skipped.push(SkippedShape {
                shape: shape.clone(),
                required_states: required,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok((reports, skipped))
}

/// Builds a verdict from already computed reports.
pub fn verdict_from_reports(
    q: u64,
    alphabet: &CycleReport,
    tori: &[TorusReport],
    skipped: &[SkippedShape],
) -> Result<Verdict> {
    if q < 2 {
        return Err(Error::Modulus(q));
    }
    let combined_g = tori.iter().fold(alphabet.g, |g, t| gcd(g, t.report.g));
    // q divides a gcd iff it divides every term, so a failing term exists
    // whenever q does not divide the combined gcd
    let certificate = if !alphabet.g.is_multiple_of(q) {
        Some(Certificate {
            divisor: alphabet.g,
            provenance: Provenance::Alphabet,
        })
    } else {
        tori.iter().find(|t| t.report.g % q != 0).map(|t| Certificate {
            divisor: t.report.g,
            provenance: Provenance::Torus {
                shape: t.shape.clone(),
            },
        })
    };
    debug_assert_eq!(certificate.is_some(), combined_g % q != 0);
    Ok(Verdict {
        q,
        outcome: if certificate.is_some() {
            Outcome::Excluded
        } else {
            Outcome::Inconclusive
        },
        certificate,
        g_f: alphabet.g,
        combined_g,
        analyzed_shapes: tori.iter().map(|t| t.shape.clone()).collect(),
        skipped_shapes: skipped.to_vec(),
    })
}

/// Decides whether the periodic points found on `φ_F` and on the given
/// torus shapes rule out `C_q^{(k)}` as a weak factor for every `k`.
///
/// `Excluded` is a proof of non-existence. `Inconclusive` asserts nothing.
/// Shapes exceeding `cap` are skipped and listed in the verdict.
pub fn refined_obstruction(
    ca: &CellularAutomaton,
    q: u64,
    shapes: &[Vec<usize>],
    cap: u64,
) -> Result<Verdict> {
    if q < 2 {
        return Err(Error::Modulus(q));
    }
    let alphabet = g_of(ca);
    let (tori, skipped) = torus_reports(ca, shapes, cap)?;
    verdict_from_reports(q, &alphabet, &tori, &skipped)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime that does not divide `g` (`g ≥ 1`).
pub fn smallest_prime_not_dividing(g: u64) -> u64 {
    (2..)
        .filter(|&p| is_prime(p))
        .find(|&p| !g.is_multiple_of(p))
        .expect("a positive integer has finitely many prime divisors")
}

/// A prime `q` with `q ∤ g_F`: no `C_q^{(k)}` is a weak factor of `ca`.
pub fn prime_witness(ca: &CellularAutomaton) -> u64 {
    smallest_prime_not_dividing(g_of(ca).g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantPeriodicPoint {
    pub symbol: Symbol,
    pub period: u64,
}

/// The smallest symbol on a cycle of `φ_F` and the length of that cycle.
/// Its constant configuration is a periodic point of least period `period`.
pub fn constant_periodic_point(ca: &CellularAutomaton) -> ConstantPeriodicPoint {
    let phi = ca.phi_map();
    let mut best: Option<ConstantPeriodicPoint> = None;
    for_each_cycle(
        phi.len(),
        |a| phi.apply(a as Symbol) as usize,
        |entry, period| {
            let mut min = entry as Symbol;
            let mut a = phi.apply(entry as Symbol);
            while a as usize != entry {
                min = min.min(a);
                a = phi.apply(a);
            }
            if best.is_none_or(|b| min < b.symbol) {
                best = Some(ConstantPeriodicPoint { symbol: min, period });
            }
        },
    )
    .expect("φ maps the alphabet into itself");
    best.expect("a finite self-map has a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{clock, eca, life};

    fn lengths(r: &CycleReport) -> Vec<u64> {
        r.lengths().collect()
    }

    #[test]
    fn g_of_named_rules() {
        assert_eq!(lengths(&g_of(&eca(51))), vec![2]);
        assert_eq!(g_of(&eca(51)).g, 2);
        assert_eq!(lengths(&g_of(&life())), vec![1]);
        assert_eq!(g_of(&life()).g, 1);
        for m in 2..=32 {
            assert_eq!(g_of(&clock(m, 1).unwrap()).g, m as u64);
        }
    }

    #[test]
    fn torus_examples() {
        let r = torus_period_gcd(&eca(51), &[3], DEFAULT_CAP).unwrap();
        assert_eq!(lengths(&r.report), vec![2, 2, 2, 2]);
        assert_eq!(r.report.g, 2);
        let r = torus_period_gcd(&clock(3, 1).unwrap(), &[2], DEFAULT_CAP).unwrap();
        assert_eq!(lengths(&r.report), vec![3, 3, 3]);
        assert_eq!(r.report.state_count, 9);
    }

    #[test]
    fn unit_torus_matches_phi() {
        for ca in [eca(30), eca(51), life(), clock(5, 2).unwrap()] {
            let shape = vec![1; ca.dimension()];
            assert_eq!(torus_period_gcd(&ca, &shape, DEFAULT_CAP).unwrap().report, g_of(&ca));
        }
    }

    #[test]
    fn budget_refusal_reports_requirement() {
        let e = torus_period_gcd(&eca(30), &[10], 1000).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { required: 1024, cap: 1000 }));
        assert!(torus_period_gcd(&eca(30), &[2, 2], 1000).is_err());
        assert!(torus_period_gcd(&eca(30), &[0], 1000).is_err());
    }

    #[test]
    fn verdict_examples() {
        let v = refined_obstruction(&life(), 2, &[], DEFAULT_CAP).unwrap();
        assert!(v.is_excluded());
        assert_eq!(
            v.certificate,
            Some(Certificate {
                divisor: 1,
                provenance: Provenance::Alphabet
            })
        );
        let c6 = clock(6, 1).unwrap();
        let v = refined_obstruction(&c6, 3, &[vec![2]], DEFAULT_CAP).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert!(v.certificate.is_none());
        assert!(refined_obstruction(&c6, 4, &[], DEFAULT_CAP).unwrap().is_excluded());
        assert!(refined_obstruction(&c6, 1, &[], DEFAULT_CAP).is_err());
    }

    #[test]
    fn torus_certificate_when_phi_is_silent() {
        let shapes = [vec![1], vec![2], vec![3], vec![4]];
        let mut seen = 0;
        for rule in 0..=255 {
            let ca = eca(rule);
            let q = g_of(&ca).g;
            if q < 2 {
                continue;
            }
            let v = refined_obstruction(&ca, q, &shapes, DEFAULT_CAP).unwrap();
            if v.is_excluded() {
                seen += 1;
                let cert = v.certificate.unwrap();
                assert!(matches!(cert.provenance, Provenance::Torus { .. }));
                assert_ne!(cert.divisor % q, 0);
            }
        }
        assert!(seen > 0);

        // rule 5 swaps the constants but fixes 0,1 on the 2-torus
        let v = refined_obstruction(&eca(5), 2, &[vec![2]], DEFAULT_CAP).unwrap();
        assert_eq!(v.g_f, 2);
        assert_eq!(
            v.certificate,
            Some(Certificate {
                divisor: 1,
                provenance: Provenance::Torus { shape: vec![2] }
            })
        );
    }

    #[test]
    fn skipped_shapes_are_recorded() {
        let v = refined_obstruction(&eca(51), 2, &[vec![3], vec![40]], 1 << 10).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert_eq!(v.analyzed_shapes, vec![vec![3]]);
        assert_eq!(v.skipped_shapes.len(), 1);
        assert_eq!(v.skipped_shapes[0].required_states, 1u128 << 40);
    }

    #[test]
    fn prime_witnesses() {
        assert_eq!(smallest_prime_not_dividing(1), 2);
        assert_eq!(smallest_prime_not_dividing(6), 5);
        assert_eq!(smallest_prime_not_dividing(30), 7);
        assert_eq!(prime_witness(&eca(51)), 3);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn constant_periodic_points() {
        assert_eq!(
            constant_periodic_point(&eca(204)),
            ConstantPeriodicPoint { symbol: 0, period: 1 }
        );
        assert_eq!(
            constant_periodic_point(&life()),
            ConstantPeriodicPoint { symbol: 0, period: 1 }
        );
        assert_eq!(
            constant_periodic_point(&clock(5, 1).unwrap()),
            ConstantPeriodicPoint { symbol: 0, period: 5 }
        );
        // rule 1 swaps the constants 0 and 1
        assert_eq!(
            constant_periodic_point(&eca(1)),
            ConstantPeriodicPoint { symbol: 0, period: 2 }
        );
    }
}
