//! Clock automata and the residue-reduction weak factor maps between them.
//!
//! `C_q^{(k)}` adds one modulo `q` at every site of `Z^k`, so its `n`-th
//! iterate adds `n` and every point has exact period `q`. For `q | m` the
//! coordinatewise reduction `a ↦ a mod q` intertwines `C_m` with `C_q`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ca::{CellularAutomaton, Symbol, TorusConfig, MAX_ALPHABET};
use crate::error::{Error, Result};
use crate::obstruction::state_space_size;
use crate::rules;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockAutomaton {
    q: u32,
    k: usize,
}

impl ClockAutomaton {
    pub fn new(q: u32, k: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Modulus(q as u64));
        }
        if q > MAX_ALPHABET {
            return Err(Error::AlphabetSize(q as u64));
        }
        if k == 0 {
            return Err(Error::ClockDimension);
        }
        Ok(ClockAutomaton { q, k })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// The same map as a radius-zero rule table.
    pub fn as_automaton(&self) -> CellularAutomaton {
        rules::clock(self.q, self.k).expect("parameters validated on construction")
    }

    fn check(&self, x: &TorusConfig) -> Result<()> {
        if x.dimension() != self.k {
            return Err(Error::InvalidShape {
                shape: x.shape().to_vec(),
                reason: format!("clock acts on dimension {}", self.k),
            });
        }
        if let Some(&bad) = x.cells().iter().find(|&&c| c as u32 >= self.q) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                alphabet_size: self.q,
            });
        }
        Ok(())
    }

    fn add(&self, x: &TorusConfig, n: u64) -> TorusConfig {
        let q = self.q as u64;
        let n = n % q;
        let cells = x
            .cells()
            .iter()
            .map(|&c| ((c as u64 + n) % q) as Symbol)
            .collect();
        TorusConfig::new(x.shape().to_vec(), cells).expect("shape unchanged")
    }

    pub fn step(&self, x: &TorusConfig) -> Result<TorusConfig> {
        self.check(x)?;
        Ok(self.add(x, 1))
    }

    /// `n`-fold iterate, computed directly as `x + n mod q`.
    pub fn iterate(&self, x: &TorusConfig, n: u64) -> Result<TorusConfig> {
        self.check(x)?;
        Ok(self.add(x, n))
    }

    /// Least `n ≥ 1` with `iterate(x, n) = x`, found by following the orbit.
    pub fn exact_period(&self, x: &TorusConfig) -> Result<u64> {
        self.check(x)?;
        let mut y = self.add(x, 1);
        let mut n = 1;
        while &y != x {
            y = self.add(&y, 1);
            n += 1;
        }
        Ok(n)
    }

    /// Whether the `n`-th iterate has a fixed point, i.e. `q | n`.
    pub fn fixed_point_exists(&self, n: u64) -> bool {
        n.is_multiple_of(self.q as u64)
    }
}

/// A coordinatewise symbol map `π` from `C_m` configurations to `C_q`
/// configurations, stored as an explicit table over `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    source_modulus: u32,
    target_modulus: u32,
    table: Vec<Symbol>,
}

/// The residue map `a ↦ a mod q` from `C_m` onto `C_q`. Refused unless
/// `q | m`: `g_F = m` for `F = C_m`, so otherwise no weak factor exists.
pub fn mod_reduction(m: u32, q: u32) -> Result<FactorWitness> {
    ClockAutomaton::new(m, 1)?;
    ClockAutomaton::new(q, 1)?;
    if !m.is_multiple_of(q) {
        return Err(Error::NotDivisible {
            m: m as u64,
            q: q as u64,
        });
    }
    FactorWitness::from_table(m, q, (0..m).map(|a| (a % q) as Symbol).collect())
}

/// The weak factor from `source` onto `target`, when `source` is a clock
/// automaton. Other sources are out of scope.
pub fn weak_factor(source: &CellularAutomaton, target: &ClockAutomaton) -> Result<FactorWitness> {
    let m = source.alphabet_size();
    let is_clock = m >= 2
        && *source == rules::clock(m, source.dimension()).expect("m in range");
    if !is_clock {
        return Err(Error::OutOfScope(
            "weak factor maps are only constructed between clock automata".into(),
        ));
    }
    if source.dimension() != target.dimension() {
        return Err(Error::OutOfScope(
            "clock reductions keep the lattice dimension".into(),
        ));
    }
    mod_reduction(m, target.modulus())
}

impl FactorWitness {
    /// A witness with an arbitrary symbol table. Used to check candidate
    /// maps, including broken ones.
    pub fn from_table(m: u32, q: u32, table: Vec<Symbol>) -> Result<Self> {
        ClockAutomaton::new(m, 1)?;
        ClockAutomaton::new(q, 1)?;
        if !m.is_multiple_of(q) {
            return Err(Error::NotDivisible {
                m: m as u64,
                q: q as u64,
            });
        }
        if table.len() != m as usize {
            return Err(Error::TableLength {
                expected: m as u128,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&s| s as u32 >= q) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                alphabet_size: q,
            });
        }
        Ok(FactorWitness {
            source_modulus: m,
            target_modulus: q,
            table,
        })
    }

    pub fn source_modulus(&self) -> u32 {
        self.source_modulus
    }

    pub fn target_modulus(&self) -> u32 {
        self.target_modulus
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.source_modulus == self.target_modulus
            && self.table.iter().enumerate().all(|(a, &b)| a == b as usize)
    }

    /// Every residue `0..q` is attained.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_modulus as usize];
        for &s in &self.table {
            hit[s as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn apply_symbol(&self, a: Symbol) -> Symbol {
        self.table[a as usize]
    }

    fn map_cells(&self, cells: &[Symbol], out: &mut [Symbol]) {
        for (o, &c) in out.iter_mut().zip(cells) {
            *o = self.table[c as usize];
        }
    }

    pub fn apply(&self, x: &TorusConfig) -> Result<TorusConfig> {
        if let Some(&bad) = x.cells().iter().find(|&&c| c as u32 >= self.source_modulus) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                alphabet_size: self.source_modulus,
            });
        }
        let mut cells = vec![0; x.len()];
        self.map_cells(x.cells(), &mut cells);
        TorusConfig::new(x.shape().to_vec(), cells)
    }

    /// Symbols `a` with `π(a + 1 mod m) ≠ π(a) + 1 mod q`. Both maps act
    /// coordinatewise, so an empty result proves equivariance on every
    /// configuration of every shape.
    pub fn symbol_counterexamples(&self) -> Vec<Symbol> {
        let (m, q) = (self.source_modulus, self.target_modulus);
        (0..m)
            .filter(|&a| {
                let lhs = self.table[((a + 1) % m) as usize] as u32;
                let rhs = (self.table[a as usize] as u32 + 1) % q;
                lhs != rhs
            })
            .map(|a| a as Symbol)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolCheck {
    pub passed: bool,
    pub counterexamples: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationCheck {
    pub shape: Vec<usize>,
    pub mode: CheckMode,
    pub states_checked: u64,
    pub passed: bool,
    /// First configuration `x` with `π(C_m(x)) ≠ C_q(π(x))`.
    pub counterexample: Option<Vec<Symbol>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub source_modulus: u32,
    pub target_modulus: u32,
    pub surjective: bool,
    pub symbol_check: SymbolCheck,
    pub configuration_check: ConfigurationCheck,
    pub passed: bool,
}

/// Sample count used when the configuration space exceeds the budget.
pub const DEFAULT_SAMPLES: u64 = 4096;

const SAMPLE_SEED: u64 = 0x5eed_c10c;

struct Intertwining<'a> {
    witness: &'a FactorWitness,
    source: CellularAutomaton,
    target: ClockAutomaton,
    shape: Vec<usize>,
}

impl Intertwining<'_> {
    /// Whether `π ∘ C_m` and `C_q ∘ π` agree on `x`, computing the source
    /// step through the generic torus map.
    fn holds(&self, stepper: &crate::ca::TorusStepper<'_>, x: &[Symbol]) -> bool {
        let mut stepped = vec![0; x.len()];
        stepper.step_into(x, &mut stepped);
        let mut lhs = vec![0; x.len()];
        self.witness.map_cells(&stepped, &mut lhs);
        let mut projected = vec![0; x.len()];
        self.witness.map_cells(x, &mut projected);
        let projected = TorusConfig::new(self.shape.clone(), projected).expect("same shape");
        let rhs = self.target.step(&projected).expect("symbols below q");
        lhs == rhs.cells()
    }

    fn first_failure_in(&self, states: std::ops::Range<u64>) -> Option<Vec<Symbol>> {
        let stepper = self.source.stepper(&self.shape).expect("shape validated");
        let m = self.source.alphabet_size();
        states
            .map(|s| {
                TorusConfig::decode(s as u128, m, &self.shape)
                    .expect("state in range")
                    .into_cells()
            })
            .find(|x| !self.holds(&stepper, x))
    }
}

/// Checks `π ∘ C_m = C_q ∘ π` on the symbol level and on configurations
/// of `shape`: exhaustively when `m^cells ≤ cap`, otherwise on
/// [`DEFAULT_SAMPLES`] seeded random configurations.
pub fn verify_equivariance(w: &FactorWitness, shape: &[usize], cap: u64) -> Result<EquivarianceReport> {
    verify_equivariance_with(w, shape, cap, DEFAULT_SAMPLES, SAMPLE_SEED)
}

pub fn verify_equivariance_with(
    w: &FactorWitness,
    shape: &[usize],
    cap: u64,
    samples: u64,
    seed: u64,
) -> Result<EquivarianceReport> {
    let k = shape.len();
    let source = rules::clock(w.source_modulus, k.max(1))?;
    let target = ClockAutomaton::new(w.target_modulus, k.max(1))?;
    let states = state_space_size(w.source_modulus, shape)?;
    let check = Intertwining {
        witness: w,
        source,
        target,
        shape: shape.to_vec(),
    };

    let (mode, states_checked, counterexample) = if states <= cap as u128 {
        let n = states as u64;
        #[cfg(feature = "parallel")]
        let failure = {
            use rayon::prelude::*;
            const CHUNK: u64 = 1 << 12;
            (0..n.div_ceil(CHUNK))
                .into_par_iter()
                .filter_map(|i| check.first_failure_in(i * CHUNK..((i + 1) * CHUNK).min(n)))
                .find_first(|_| true)
        };
        #[cfg(not(feature = "parallel"))]
        let failure = check.first_failure_in(0..n);
        (CheckMode::Exhaustive, n, failure)
    } else {
        let stepper = check.source.stepper(shape)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let failure = (0..samples)
            .map(|_| {
                (0..check.shape.iter().product::<usize>())
                    .map(|_| rng.gen_range(0..w.source_modulus) as Symbol)
                    .collect::<Vec<_>>()
            })
            .find(|x| !check.holds(&stepper, x));
        (CheckMode::Sampled, samples, failure)
    };

    let counterexamples = w.symbol_counterexamples();
    let symbol_check = SymbolCheck {
        passed: counterexamples.is_empty(),
        counterexamples,
    };
    let configuration_check = ConfigurationCheck {
        shape: shape.to_vec(),
        mode,
        states_checked,
        passed: counterexample.is_none(),
        counterexample,
    };
    let surjective = w.is_surjective();
    Ok(EquivarianceReport {
        source_modulus: w.source_modulus,
        target_modulus: w.target_modulus,
        passed: surjective && symbol_check.passed && configuration_check.passed,
        surjective,
        symbol_check,
        configuration_check,
    })
}
