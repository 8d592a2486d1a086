//! Cellular automata with finite rule tables, acting on torus configurations.
//!
//! A torus configuration of shape `(n_1, …, n_d)` stands for the spatially
//! periodic point of `A^{Z^d}` that repeats it with period `n_i` along axis
//! `i`. Neighbor offsets wrap modulo the shape, so the torus map is the
//! global map restricted to those periodic points. This holds for every
//! shape, including ones smaller than the neighborhood: shape `(1, …, 1)`
//! is exactly the set of constant configurations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cell value. Alphabets are capped at `2^16` symbols.
pub type Symbol = u16;

/// Largest supported alphabet size.
pub const MAX_ALPHABET: u32 = 1 << 16;

/// Largest rule table (in entries) a single automaton may carry.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 26;

/// A relative lattice offset in `Z^d`.
pub type Offset = Vec<i64>;

/// A cellular automaton given by alphabet size, dimension, an ordered
/// neighborhood and a total rule table.
///
/// A pattern `(a_1, …, a_s)` read at the neighborhood offsets in order is
/// looked up at index `Σ a_j · |A|^(s−j)`: the first offset is the most
/// significant digit. Offsets are kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularAutomaton {
    alphabet_size: u32,
    dimension: usize,
    neighborhood: Vec<Offset>,
    rule_table: Vec<Symbol>,
}

fn check_alphabet(alphabet_size: u32) -> Result<()> {
    if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
        return Err(Error::AlphabetSize(alphabet_size as u64));
    }
    Ok(())
}

/// Number of patterns `|A|^s`, refusing tables beyond [`MAX_TABLE_ENTRIES`].
pub fn pattern_count(alphabet_size: u32, arity: usize) -> Result<usize> {
    let mut count: u128 = 1;
    for _ in 0..arity {
        count *= alphabet_size as u128;
        if count > MAX_TABLE_ENTRIES {
            return Err(Error::TableTooLarge(
                (alphabet_size as u128).saturating_pow(arity as u32),
            ));
        }
    }
    Ok(count as usize)
}

fn check_neighborhood(dimension: usize, neighborhood: &[Offset]) -> Result<()> {
    if dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    if neighborhood.is_empty() {
        return Err(Error::EmptyNeighborhood);
    }
    for offset in neighborhood {
        if offset.len() != dimension {
            return Err(Error::OffsetDimension {
                offset: offset.clone(),
                expected: dimension,
                found: offset.len(),
            });
        }
    }
    let mut sorted: Vec<&Offset> = neighborhood.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateOffset(w[0].clone()));
    }
    Ok(())
}

impl CellularAutomaton {
    /// Builds an automaton whose neighborhood is already in canonical
    /// (lexicographic) order.
    pub fn new(
        alphabet_size: u32,
        dimension: usize,
        neighborhood: Vec<Offset>,
        rule_table: Vec<Symbol>,
    ) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        check_neighborhood(dimension, &neighborhood)?;
        if neighborhood.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedNeighborhood);
        }
        let expected = pattern_count(alphabet_size, neighborhood.len())?;
        if rule_table.len() != expected {
            return Err(Error::TableLength {
                expected: expected as u128,
                found: rule_table.len(),
            });
        }
        if let Some(&bad) = rule_table.iter().find(|&&s| s as u32 >= alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                alphabet_size,
            });
        }
        Ok(CellularAutomaton {
            alphabet_size,
            dimension,
            neighborhood,
            rule_table,
        })
    }

    /// Builds an automaton from a table indexed in the order of the given
    /// neighborhood, re-sorting the offsets and permuting the table so the
    /// result is canonical.
    pub fn with_neighborhood_order(
        alphabet_size: u32,
        dimension: usize,
        neighborhood: Vec<Offset>,
        rule_table: Vec<Symbol>,
    ) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        check_neighborhood(dimension, &neighborhood)?;
        let arity = neighborhood.len();
        let expected = pattern_count(alphabet_size, arity)?;
        if rule_table.len() != expected {
            return Err(Error::TableLength {
                expected: expected as u128,
                found: rule_table.len(),
            });
        }
        // order[j] = position in the input of the j-th canonical offset
        let mut order: Vec<usize> = (0..arity).collect();
        order.sort_by(|&a, &b| neighborhood[a].cmp(&neighborhood[b]));
        if order.iter().enumerate().all(|(i, &j)| i == j) {
            return Self::new(alphabet_size, dimension, neighborhood, rule_table);
        }
        let base = alphabet_size as usize;
        let mut weights = vec![0usize; arity];
        let mut w = 1;
        for j in (0..arity).rev() {
            weights[j] = w;
            w *= base;
        }
        let mut canonical_digits = vec![0usize; arity];
        let table = (0..expected)
            .map(|index| {
                let mut rest = index;
                for j in (0..arity).rev() {
                    canonical_digits[j] = rest % base;
                    rest /= base;
                }
                let original: usize = (0..arity)
                    .map(|j| canonical_digits[j] * weights[order[j]])
                    .sum();
                rule_table[original]
            })
            .collect();
        let sorted = order.iter().map(|&j| neighborhood[j].clone()).collect();
        Self::new(alphabet_size, dimension, sorted, table)
    }

    /// Tabulates a local rule given as a function of the neighborhood
    /// pattern (listed in canonical offset order).
    pub fn from_fn(
        alphabet_size: u32,
        dimension: usize,
        mut neighborhood: Vec<Offset>,
        rule: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        check_neighborhood(dimension, &neighborhood)?;
        neighborhood.sort();
        let arity = neighborhood.len();
        let count = pattern_count(alphabet_size, arity)?;
        let mut pattern = vec![0 as Symbol; arity];
        let table = (0..count)
            .map(|index| {
                decode_digits(index, alphabet_size, &mut pattern);
                rule(&pattern)
            })
            .collect();
        Self::new(alphabet_size, dimension, neighborhood, table)
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn neighborhood(&self) -> &[Offset] {
        &self.neighborhood
    }

    pub fn rule_table(&self) -> &[Symbol] {
        &self.rule_table
    }

    /// Mixed-radix index of a neighborhood pattern.
    pub fn pattern_index(&self, pattern: &[Symbol]) -> usize {
        debug_assert_eq!(pattern.len(), self.neighborhood.len());
        let base = self.alphabet_size as usize;
        pattern.iter().fold(0, |acc, &a| acc * base + a as usize)
    }

    /// Fills `pattern` with the digits of a pattern index.
    pub fn pattern_at(&self, index: usize, pattern: &mut [Symbol]) {
        decode_digits(index, self.alphabet_size, pattern);
    }

    /// Evaluates the local rule on one pattern.
    pub fn local(&self, pattern: &[Symbol]) -> Symbol {
        self.rule_table[self.pattern_index(pattern)]
    }

    /// The induced alphabet map: `φ(a)` is the rule evaluated on the
    /// constant pattern `(a, …, a)`.
    pub fn phi_map(&self) -> AlphabetMap {
        let arity = self.neighborhood.len();
        let base = self.alphabet_size as usize;
        // index of (a,…,a) is a · (1 + |A| + … + |A|^(s−1))
        let repunit: usize = (0..arity).fold(0, |acc, _| acc * base + 1);
        AlphabetMap {
            table: (0..base).map(|a| self.rule_table[a * repunit]).collect(),
        }
    }

    pub fn check_symbol(&self, symbol: u64) -> Result<Symbol> {
        if symbol >= self.alphabet_size as u64 {
            return Err(Error::SymbolOutOfRange {
                symbol,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(symbol as Symbol)
    }

    /// The constant configuration with value `a` on a torus of the given shape.
    pub fn embed_constant(&self, a: Symbol, shape: &[usize]) -> Result<TorusConfig> {
        self.check_symbol(a as u64)?;
        if shape.len() != self.dimension {
            return Err(Error::InvalidShape {
                shape: shape.to_vec(),
                reason: format!("expected {} axes", self.dimension),
            });
        }
        TorusConfig::constant(a, shape)
    }

    /// Checks that `x` lives on a torus of the right dimension with symbols
    /// from this automaton's alphabet.
    pub fn validate(&self, x: &TorusConfig) -> Result<()> {
        if x.shape.len() != self.dimension {
            return Err(Error::InvalidShape {
                shape: x.shape.clone(),
                reason: format!("expected {} axes", self.dimension),
            });
        }
        if let Some(&bad) = x.cells.iter().find(|&&c| c as u32 >= self.alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(())
    }

    /// Precomputes neighbor lookups for repeated application on one shape.
    pub fn stepper(&self, shape: &[usize]) -> Result<TorusStepper<'_>> {
        TorusStepper::new(self, shape)
    }

    /// One application of the global map on a torus configuration.
    pub fn apply_torus(&self, x: &TorusConfig) -> Result<TorusConfig> {
        self.validate(x)?;
        let stepper = self.stepper(&x.shape)?;
        let mut cells = vec![0; x.cells.len()];
        stepper.step_into(&x.cells, &mut cells);
        Ok(TorusConfig {
            shape: x.shape.clone(),
            cells,
        })
    }

    /// `n` applications of the global map.
    pub fn iterate_torus(&self, x: &TorusConfig, n: u64) -> Result<TorusConfig> {
        self.validate(x)?;
        let stepper = self.stepper(&x.shape)?;
        let mut cur = x.cells.clone();
        let mut next = vec![0; cur.len()];
        for _ in 0..n {
            stepper.step_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(TorusConfig {
            shape: x.shape.clone(),
            cells: cur,
        })
    }
}

fn decode_digits(mut index: usize, alphabet_size: u32, digits: &mut [Symbol]) {
    let base = alphabet_size as usize;
    for d in digits.iter_mut().rev() {
        *d = (index % base) as Symbol;
        index /= base;
    }
}

/// Neighbor index tables for one automaton on one torus shape.
pub struct TorusStepper<'a> {
    ca: &'a CellularAutomaton,
    cells: usize,
    // neighbors[c * s + j] = cell read by offset j at cell c
    neighbors: Vec<usize>,
}

impl<'a> TorusStepper<'a> {
    fn new(ca: &'a CellularAutomaton, shape: &[usize]) -> Result<Self> {
        check_shape(shape)?;
        if shape.len() != ca.dimension {
            return Err(Error::InvalidShape {
                shape: shape.to_vec(),
                reason: format!("expected {} axes", ca.dimension),
            });
        }
        let cells = cell_count(shape)?;
        let arity = ca.neighborhood.len();
        let mut neighbors = Vec::with_capacity(cells * arity);
        let mut coords = vec![0usize; shape.len()];
        for c in 0..cells {
            unravel(c, shape, &mut coords);
            for offset in &ca.neighborhood {
                let mut index = 0usize;
                for ((&v, &o), &n) in coords.iter().zip(offset).zip(shape) {
                    let wrapped = (v as i64 + o).rem_euclid(n as i64) as usize;
                    index = index * n + wrapped;
                }
                neighbors.push(index);
            }
        }
        Ok(TorusStepper {
            ca,
            cells,
            neighbors,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Writes the image of `src` into `dst`. Both slices must have
    /// `self.cells()` entries of valid symbols.
    pub fn step_into(&self, src: &[Symbol], dst: &mut [Symbol]) {
        let arity = self.ca.neighborhood.len();
        let base = self.ca.alphabet_size as usize;
        let table = &self.ca.rule_table;
        for (out, nbrs) in dst.iter_mut().zip(self.neighbors.chunks_exact(arity)) {
            let index = nbrs.iter().fold(0usize, |acc, &n| acc * base + src[n] as usize);
            *out = table[index];
        }
    }
}

/// The induced self-map of the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetMap {
    table: Vec<Symbol>,
}

impl AlphabetMap {
    pub fn new(table: Vec<Symbol>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ALPHABET as usize {
            return Err(Error::AlphabetSize(n as u64));
        }
        if let Some(&bad) = table.iter().find(|&&s| s as usize >= n) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                alphabet_size: n as u32,
            });
        }
        Ok(AlphabetMap { table })
    }

    pub fn apply(&self, a: Symbol) -> Symbol {
        self.table[a as usize]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.table
    }
}

pub(crate) fn check_shape(shape: &[usize]) -> Result<()> {
    if shape.is_empty() {
        return Err(Error::InvalidShape {
            shape: shape.to_vec(),
            reason: "shape needs at least one axis".into(),
        });
    }
    if shape.contains(&0) {
        return Err(Error::InvalidShape {
            shape: shape.to_vec(),
            reason: "every axis length must be at least 1".into(),
        });
    }
    Ok(())
}

/// Number of cells of a shape, refusing products that overflow.
pub fn cell_count(shape: &[usize]) -> Result<usize> {
    check_shape(shape)?;
    shape
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::InvalidShape {
            shape: shape.to_vec(),
            reason: "cell count overflows".into(),
        })
}

fn unravel(mut index: usize, shape: &[usize], coords: &mut [usize]) {
    for (c, &n) in coords.iter_mut().zip(shape).rev() {
        *c = index % n;
        index /= n;
    }
}

/// A configuration on a finite torus, stored row-major with the first axis
/// varying slowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusConfig {
    shape: Vec<usize>,
    cells: Vec<Symbol>,
}

impl TorusConfig {
    pub fn new(shape: Vec<usize>, cells: Vec<Symbol>) -> Result<Self> {
        let expected = cell_count(&shape)?;
        if cells.len() != expected {
            return Err(Error::CellCount {
                shape,
                expected,
                found: cells.len(),
            });
        }
        Ok(TorusConfig { shape, cells })
    }

    pub fn constant(a: Symbol, shape: &[usize]) -> Result<Self> {
        let n = cell_count(shape)?;
        Ok(TorusConfig {
            shape: shape.to_vec(),
            cells: vec![a; n],
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Symbol> {
        self.cells
    }

    pub fn dimension(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, coords: &[usize]) -> Option<Symbol> {
        if coords.len() != self.shape.len() || coords.iter().zip(&self.shape).any(|(c, n)| c >= n) {
            return None;
        }
        let index = coords
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&c, &n)| acc * n + c);
        Some(self.cells[index])
    }

    /// Unit shift along `axis` (0-based): the result at `v` is `self` at
    /// `v + e_axis`.
    pub fn shift(&self, axis: usize) -> Result<TorusConfig> {
        let d = self.shape.len();
        if axis >= d {
            return Err(Error::AxisOutOfRange { axis, dimension: d });
        }
        let n = self.shape[axis];
        let stride: usize = self.shape[axis + 1..].iter().product();
        let block = n * stride;
        let mut cells = Vec::with_capacity(self.cells.len());
        for chunk in self.cells.chunks_exact(block) {
            // rotating each axis block left by one stride is v ↦ v + e_axis
            cells.extend_from_slice(&chunk[stride..]);
            cells.extend_from_slice(&chunk[..stride]);
        }
        Ok(TorusConfig {
            shape: self.shape.clone(),
            cells,
        })
    }

    /// Row-major mixed-radix code of this configuration over an alphabet
    /// of the given size; the first cell is the most significant digit.
    pub fn encode(&self, alphabet_size: u32) -> u128 {
        let base = alphabet_size as u128;
        self.cells.iter().fold(0, |acc, &c| acc * base + c as u128)
    }

    /// Inverse of [`TorusConfig::encode`].
    pub fn decode(code: u128, alphabet_size: u32, shape: &[usize]) -> Result<Self> {
        let n = cell_count(shape)?;
        let base = alphabet_size as u128;
        let mut cells = vec![0; n];
        let mut rest = code;
        for c in cells.iter_mut().rev() {
            *c = (rest % base) as Symbol;
            rest /= base;
        }
        if rest != 0 {
            return Err(Error::InvalidShape {
                shape: shape.to_vec(),
                reason: format!("state code {code} exceeds the state space"),
            });
        }
        Ok(TorusConfig {
            shape: shape.to_vec(),
            cells,
        })
    }
}

impl std::fmt::Display for TorusConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules;

    fn cfg(shape: &[usize], cells: &[Symbol]) -> TorusConfig {
        TorusConfig::new(shape.to_vec(), cells.to_vec()).unwrap()
    }

    #[test]
    fn identity_rule_204() {
        let ca = rules::eca(204);
        let x = cfg(&[4], &[0, 1, 1, 0]);
        assert_eq!(ca.apply_torus(&x).unwrap(), x);
    }

    #[test]
    fn rule_51_complements_center() {
        // 51 = 0b00110011: pattern (l,c,r) ↦ 1 - c
        let ca = rules::eca(51);
        let x = cfg(&[3], &[0, 1, 1]);
        assert_eq!(ca.apply_torus(&x).unwrap(), cfg(&[3], &[1, 0, 0]));
    }

    #[test]
    fn clock_as_automaton_steps() {
        let ca = rules::clock(3, 1).unwrap();
        let x = cfg(&[3], &[0, 1, 2]);
        assert_eq!(ca.apply_torus(&x).unwrap(), cfg(&[3], &[1, 2, 0]));
    }

    #[test]
    fn apply_rejects_bad_symbol() {
        let ca = rules::eca(30);
        let x = cfg(&[3], &[0, 2, 0]);
        assert!(matches!(
            ca.apply_torus(&x),
            Err(Error::SymbolOutOfRange { symbol: 2, .. })
        ));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let ca = rules::eca(30);
        let x = cfg(&[2, 2], &[0, 0, 0, 0]);
        assert!(matches!(ca.apply_torus(&x), Err(Error::InvalidShape { .. })));
    }

    #[test]
    fn phi_of_named_rules() {
        let clock = rules::clock(6, 1).unwrap();
        assert_eq!(clock.phi_map().as_slice(), &[1, 2, 3, 4, 5, 0]);
        assert_eq!(rules::eca(204).phi_map().as_slice(), &[0, 1]);
        assert_eq!(rules::life().phi_map().as_slice(), &[0, 0]);
    }

    #[test]
    fn embed_constant_cases() {
        let ca = rules::clock(3, 2).unwrap();
        assert_eq!(ca.embed_constant(2, &[2, 2]).unwrap().cells(), &[2, 2, 2, 2]);
        let eca = rules::eca(0);
        assert_eq!(eca.embed_constant(0, &[3]).unwrap().cells(), &[0, 0, 0]);
        assert!(eca.embed_constant(2, &[3]).is_err());
    }

    #[test]
    fn shift_examples() {
        let x = cfg(&[3], &[0, 1, 2]);
        assert_eq!(x.shift(0).unwrap(), cfg(&[3], &[1, 2, 0]));
        let k = TorusConfig::constant(1, &[2, 3]).unwrap();
        assert_eq!(k.shift(1).unwrap(), k);
        assert!(matches!(x.shift(1), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn shift_2d_moves_rows_and_columns() {
        // rows (0,1,2) and (3,4,5)
        let x = cfg(&[2, 3], &[0, 1, 2, 3, 4, 5]);
        assert_eq!(x.shift(0).unwrap().cells(), &[3, 4, 5, 0, 1, 2]);
        assert_eq!(x.shift(1).unwrap().cells(), &[1, 2, 0, 4, 5, 3]);
        assert_eq!(x.shift(1).unwrap().get(&[0, 0]), x.get(&[0, 1]));
    }

    #[test]
    fn shift_has_axis_period() {
        let x = cfg(&[2, 3], &[0, 1, 0, 1, 1, 0]);
        let mut y = x.clone();
        for _ in 0..3 {
            y = y.shift(1).unwrap();
        }
        assert_eq!(y, x);
    }

    #[test]
    fn torus_config_validation() {
        assert!(TorusConfig::new(vec![2, 2], vec![0; 3]).is_err());
        assert!(TorusConfig::new(vec![0], vec![]).is_err());
        assert!(TorusConfig::new(vec![], vec![]).is_err());
    }

    #[test]
    fn encode_is_row_major_big_endian() {
        let x = cfg(&[3], &[1, 0, 0]);
        assert_eq!(x.encode(2), 4);
        assert_eq!(TorusConfig::decode(4, 2, &[3]).unwrap(), x);
        assert!(TorusConfig::decode(8, 2, &[3]).is_err());
    }

    #[test]
    fn constructor_rejects_bad_inputs() {
        assert!(matches!(
            CellularAutomaton::new(2, 1, vec![vec![0], vec![0]], vec![0; 4]),
            Err(Error::DuplicateOffset(_))
        ));
        assert!(matches!(
            CellularAutomaton::new(2, 1, vec![vec![1], vec![0]], vec![0; 4]),
            Err(Error::UnsortedNeighborhood)
        ));
        assert!(matches!(
            CellularAutomaton::new(2, 1, vec![vec![0]], vec![0; 3]),
            Err(Error::TableLength { .. })
        ));
        assert!(matches!(
            CellularAutomaton::new(2, 1, vec![vec![0]], vec![0, 2]),
            Err(Error::SymbolOutOfRange { .. })
        ));
        assert!(matches!(
            CellularAutomaton::new(0, 1, vec![vec![0]], vec![]),
            Err(Error::AlphabetSize(0))
        ));
        assert!(matches!(
            CellularAutomaton::new(2, 2, vec![vec![0]], vec![0, 1]),
            Err(Error::OffsetDimension { .. })
        ));
        assert!(matches!(
            CellularAutomaton::new(2, 1, vec![], vec![0]),
            Err(Error::EmptyNeighborhood)
        ));
    }

    #[test]
    fn reordering_permutes_table() {
        // rule reading (right, left) in that order: output = right
        let table = vec![0, 0, 1, 1];
        let ca = CellularAutomaton::with_neighborhood_order(2, 1, vec![vec![1], vec![-1]], table)
            .unwrap();
        assert_eq!(ca.neighborhood(), &[vec![-1], vec![1]]);
        // canonical pattern (left, right): output = right
        assert_eq!(ca.rule_table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn small_torus_wraps_neighbors_onto_same_cell() {
        // on shape (1) every offset reads the single cell, so rule 30 acts as φ
        let ca = rules::eca(30);
        let phi = ca.phi_map();
        for a in 0..2 {
            let x = ca.embed_constant(a, &[1]).unwrap();
            assert_eq!(ca.apply_torus(&x).unwrap().cells(), &[phi.apply(a)]);
        }
    }

    #[test]
    fn iterate_matches_repeated_apply() {
        let ca = rules::eca(110);
        let x = cfg(&[5], &[0, 1, 0, 0, 1]);
        let mut y = x.clone();
        for _ in 0..4 {
            y = ca.apply_torus(&y).unwrap();
        }
        assert_eq!(ca.iterate_torus(&x, 4).unwrap(), y);
    }

    #[test]
    fn alphabet_map_validation() {
        assert!(AlphabetMap::new(vec![]).is_err());
        assert!(AlphabetMap::new(vec![0, 2]).is_err());
        assert_eq!(AlphabetMap::new(vec![1, 0]).unwrap().apply(0), 1);
    }
}
