//! Finitely presented modules over quotient rings `P/J` and their Fitting
//! ideals.
//!
//! A module is given by an `m x c` matrix over the ambient ring `P`: rows
//! are generators, columns are relations. `Fitt_i` is generated by the
//! `(m - i)`-minors, and is materialized as an ideal of `P` that contains
//! `J`, so all comparisons happen in one polynomial ring.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{MonomialOrder, Polynomial, Ring};

/// The quotient algebra `ring / relations`.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    ring: Ring,
    relations: Ideal,
}

impl PresentedAlgebra {
    pub fn new(relations: Ideal) -> Self {
        PresentedAlgebra { ring: relations.ring().clone(), relations }
    }

    pub fn polynomial_ring(ring: &Ring) -> Self {
        Self::new(Ideal::zero(ring))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }
}

/// Dense matrix of ambient polynomials, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Validation("matrix rows have different lengths".into()));
        }
        if rows.iter().flatten().any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let nrows = rows.len();
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix with `diag[k]` at position `(k, k)`.
    pub fn diagonal(ring: &Ring, diag: Vec<Polynomial>) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(ring, n, n);
        for (k, d) in diag.into_iter().enumerate() {
            m.set(k, k, d)?;
        }
        Ok(m)
    }

    /// Parses `"a, b; c, d"`: rows separated by `;`, entries by `,`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|row| row.split(',').map(|e| ring.parse(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Polynomial) -> Result<()> {
        if value.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Appends a column.
    pub fn push_column(&mut self, col: Vec<Polynomial>) -> Result<()> {
        if col.len() != self.rows {
            return Err(Error::Validation(format!("column has {} entries, matrix has {} rows", col.len(), self.rows)));
        }
        if col.iter().any(|p| p.ring() != &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (r, extra) in col.into_iter().enumerate() {
            entries.extend(self.entries[r * self.cols..(r + 1) * self.cols].iter().cloned());
            entries.push(extra);
        }
        self.entries = entries;
        self.cols += 1;
        Ok(())
    }

    /// Appends `count` zero rows.
    pub fn push_zero_rows(&mut self, count: usize) {
        self.entries.extend(std::iter::repeat_n(Polynomial::zero(&self.ring), count * self.cols));
        self.rows += count;
    }

    pub fn map_entries(&self, target: &Ring, f: impl Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries })
    }
}

/// Determinants of submatrices, memoized by (row set, column set).
struct MinorTable<'a> {
    matrix: &'a PolyMatrix,
    memo: HashMap<(Vec<usize>, Vec<usize>), Polynomial>,
}

impl MinorTable<'_> {
    fn det(&mut self, rows: &[usize], cols: &[usize]) -> Polynomial {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => return Polynomial::one(self.matrix.ring()),
            1 => return self.matrix.get(rows[0], cols[0]).clone(),
            _ => {}
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(d) = self.memo.get(&key) {
            return d.clone();
        }
        // Laplace expansion along the first selected row
        let mut acc = Polynomial::zero(self.matrix.ring());
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.matrix.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &c)| c).collect();
            let sub = self.det(&rows[1..], &rest);
            if sub.is_zero() {
                continue;
            }
            let term = entry * &sub;
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// All `k x k` minors, row subsets outermost, both in lexicographic
/// index order. `k = 0` gives `[1]`; `k` larger than either dimension
/// gives no minors.
pub fn minors(matrix: &PolyMatrix, k: usize) -> Vec<Polynomial> {
    if k == 0 {
        return vec![Polynomial::one(matrix.ring())];
    }
    if k > matrix.nrows() || k > matrix.ncols() {
        return Vec::new();
    }
    let mut table = MinorTable { matrix, memo: HashMap::new() };
    let mut out = Vec::new();
    for rows in (0..matrix.nrows()).combinations(k) {
        for cols in (0..matrix.ncols()).combinations(k) {
            out.push(table.det(&rows, &cols));
        }
    }
    out
}

/// A module over a [`PresentedAlgebra`] given by generators and relations.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    algebra: PresentedAlgebra,
    matrix: PolyMatrix,
    row_labels: Vec<String>,
}

impl PresentedModule {
    pub fn new(algebra: PresentedAlgebra, matrix: PolyMatrix, row_labels: Vec<String>) -> Result<Self> {
        if matrix.ring() != algebra.ring() {
            return Err(Error::RingMismatch);
        }
        if row_labels.len() != matrix.nrows() {
            return Err(Error::Validation(format!(
                "{} row labels for a matrix with {} rows",
                row_labels.len(),
                matrix.nrows()
            )));
        }
        Ok(PresentedModule { algebra, matrix, row_labels })
    }

    /// Labels rows `e1..em`.
    pub fn with_default_labels(algebra: PresentedAlgebra, matrix: PolyMatrix) -> Result<Self> {
        let labels = (1..=matrix.nrows()).map(|k| format!("e{k}")).collect();
        Self::new(algebra, matrix, labels)
    }

    /// The free module of rank `m` (no relations).
    pub fn free(algebra: PresentedAlgebra, m: usize) -> Self {
        let matrix = PolyMatrix::zeros(algebra.ring(), m, 0);
        Self::with_default_labels(algebra, matrix).expect("consistent shapes")
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn ngens(&self) -> usize {
        self.matrix.nrows()
    }

    /// `Fitt_i`, as the ambient ideal `J + (all (m-i)-minors)`. It is the
    /// unit ideal for `i >= m`, and just `J` when no minors of the needed
    /// size exist (including every negative `i`).
    pub fn fitting_ideal(&self, i: i64) -> Ideal {
        let ring = self.algebra.ring();
        let m = self.ngens() as i64;
        if i >= m {
            return Ideal::unit(ring);
        }
        let size = (m - i.max(i64::MIN / 2)) as u64;
        let relations = self.algebra.relations().generators().to_vec();
        if size > self.matrix.nrows().min(self.matrix.ncols()) as u64 {
            return Ideal::new(ring, relations).expect("same ring");
        }
        let mut gens = relations;
        let mut seen = std::collections::HashSet::new();
        for minor in minors(&self.matrix, size as usize) {
            if minor.is_zero() {
                continue;
            }
            // drop scalar multiples of minors already collected
            if seen.insert(minor.monic(&MonomialOrder::GrevLex)) {
                gens.push(minor);
            }
        }
        Ideal::new(ring, gens).expect("same ring")
    }

    /// `M ⊕ A^r`: appends `r` zero rows.
    pub fn direct_sum_free(&self, r: usize) -> PresentedModule {
        let mut matrix = self.matrix.clone();
        matrix.push_zero_rows(r);
        let mut labels = self.row_labels.clone();
        let start = labels.len();
        labels.extend((1..=r).map(|k| format!("f{}", start + k)));
        PresentedModule { algebra: self.algebra.clone(), matrix, row_labels: labels }
    }

    /// Base change along the ring map sending variable `i` of the ambient
    /// ring to `images[i]` in `target`. Matrix entries and relation
    /// generators are mapped one by one.
    pub fn base_change(&self, target: &Ring, images: &[Polynomial]) -> Result<PresentedModule> {
        let matrix = self.matrix.map_entries(target, |p| p.substitute(target, images))?;
        let relations = self.algebra.relations().substitute(target, images)?;
        PresentedModule::new(PresentedAlgebra::new(relations), matrix, self.row_labels.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::CoefficientField;
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> Ring {
        Ring::new(CoefficientField::Rationals, vars.iter().copied()).unwrap()
    }

    fn ideal(r: &Ring, gens: &str) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn diag_module(r: &Ring, entries: &str) -> PresentedModule {
        let diag = entries.split(',').map(|e| r.parse(e).unwrap()).collect();
        PresentedModule::with_default_labels(
            PresentedAlgebra::polynomial_ring(r),
            PolyMatrix::diagonal(r, diag).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn minors_examples() {
        let r = ring(&["a", "b", "x", "y", "z", "w"]);
        let d = PolyMatrix::parse(&r, "a, 0; 0, b").unwrap();
        assert_eq!(minors(&d, 1).into_iter().filter(|p| !p.is_zero()).collect::<Vec<_>>(), vec![
            r.parse("a").unwrap(),
            r.parse("b").unwrap()
        ]);
        assert_eq!(minors(&d, 2), vec![r.parse("a*b").unwrap()]);
        let m = PolyMatrix::parse(&r, "x, y; z, w").unwrap();
        assert_eq!(minors(&m, 2), vec![r.parse("x*w - y*z").unwrap()]);
        assert_eq!(minors(&m, 0), vec![r.one()]);
        assert!(minors(&m, 3).is_empty());
    }

    #[test]
    fn determinant_matches_permutation_expansion() {
        let r = ring(&["a", "b", "c"]);
        let m = PolyMatrix::parse(&r, "a, b, 1, c; b, 2, c, a; 0, a, a*b, 1; c, c, 3, b").unwrap();
        // Leibniz formula over all permutations
        let mut leibniz = r.zero();
        for perm in (0..4).permutations(4) {
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut prod = r.one();
            for (row, &col) in perm.iter().enumerate() {
                prod = &prod * m.get(row, col);
            }
            leibniz = if inversions % 2 == 0 { &leibniz + &prod } else { &leibniz - &prod };
        }
        assert_eq!(minors(&m, 4), vec![leibniz]);
    }

    #[test]
    fn free_module_fitting() {
        let r = ring(&["x", "y"]);
        let algebra = PresentedAlgebra::new(ideal(&r, "x*y"));
        let free = PresentedModule::free(algebra.clone(), 3);
        assert!(free.fitting_ideal(2).equals(&ideal(&r, "x*y")));
        assert!(free.fitting_ideal(3).is_unit());
        assert!(free.fitting_ideal(-1).equals(&ideal(&r, "x*y")));
    }

    #[test]
    fn diagonal_fitting() {
        let r = ring(&["a", "b"]);
        let m = diag_module(&r, "a, b");
        assert!(m.fitting_ideal(0).equals(&ideal(&r, "a*b")));
        assert!(m.fitting_ideal(1).equals(&ideal(&r, "a, b")));
        assert!(m.fitting_ideal(2).is_unit());
        assert!(m.fitting_ideal(-3).is_zero());
    }

    #[test]
    fn direct_sum_examples() {
        let r = ring(&["a", "b"]);
        let m = diag_module(&r, "a, b");
        let same = m.direct_sum_free(0);
        assert_eq!(same.matrix(), m.matrix());

        let algebra = PresentedAlgebra::polynomial_ring(&r);
        let two = PresentedModule::free(algebra.clone(), 1).direct_sum_free(1);
        assert_eq!(two.ngens(), 2);
        assert!(two.fitting_ideal(1).is_zero());
        assert!(two.fitting_ideal(2).is_unit());

        let shifted = diag_module(&r, "a").direct_sum_free(1);
        assert!(shifted.fitting_ideal(2).is_unit());
        assert!(shifted.fitting_ideal(1).equals(&ideal(&r, "a")));
        assert!(shifted.fitting_ideal(0).is_zero());
    }

    #[test]
    fn base_change_examples() {
        let r = ring(&["x", "y"]);
        let m = diag_module(&r, "x, y");
        let id: Vec<Polynomial> = (0..2).map(|i| r.gen(i)).collect();
        let same = m.base_change(&r, &id).unwrap();
        assert_eq!(same.matrix(), m.matrix());

        let kill_x = [r.zero(), r.gen(1)];
        let changed = m.base_change(&r, &kill_x).unwrap();
        let direct = changed.fitting_ideal(1);
        let pushed = m.fitting_ideal(1).substitute(&r, &kill_x).unwrap();
        assert!(direct.equals(&ideal(&r, "y")));
        assert!(direct.equals(&pushed));

        let constants = PresentedModule::with_default_labels(
            PresentedAlgebra::polynomial_ring(&r),
            PolyMatrix::parse(&r, "2, 0; 1, 3").unwrap(),
        )
        .unwrap();
        assert_eq!(constants.base_change(&r, &kill_x).unwrap().matrix(), constants.matrix());
    }

    #[test]
    fn annihilator_relations_on_diagonal_presentations() {
        // M = R/(a1) ⊕ ... ⊕ R/(am): Ann(M) = (a1) ∩ ... ∩ (am)
        let r = ring(&["x", "y", "z"]);
        for entries in ["x, y", "x^2, x*y", "x*y, y*z, x*z", "x, x^2*y, z"] {
            let m = diag_module(&r, entries);
            let ann = m
                .matrix()
                .column(0)
                .iter()
                .enumerate()
                .map(|(k, _)| Ideal::new(&r, vec![m.matrix().get(k, k).clone()]).unwrap())
                .reduce(|a, b| a.intersect(&b).unwrap())
                .unwrap();
            let fitt0 = m.fitting_ideal(0);
            // standard direction: Fitt_0 ⊆ Ann and Ann^m ⊆ Fitt_0
            assert!(ann.contains_ideal(&fitt0), "{entries}");
            assert!(fitt0.contains_ideal(&ann.power(m.ngens() as u32)), "{entries}");
            for i in 0..m.ngens() as i64 {
                let lhs = ann.product(&m.fitting_ideal(i + 1)).unwrap();
                assert!(m.fitting_ideal(i).contains_ideal(&lhs), "{entries} i={i}");
            }
        }
    }

    fn arb_module() -> impl Strategy<Value = PresentedModule> {
        let r = Ring::new(CoefficientField::Prime(3), ["x", "y"]).unwrap();
        let entry = prop_oneof![
            Just("0"),
            Just("1"),
            Just("x"),
            Just("y"),
            Just("x*y"),
            Just("x^2 + y"),
            Just("2*x - y"),
            Just("y^2")
        ];
        (1usize..4, 0usize..4)
            .prop_flat_map(move |(rows, cols)| prop::collection::vec(entry.clone(), rows * cols).prop_map(move |es| (rows, cols, es)))
            .prop_map(move |(rows, cols, es)| {
                let mut m = PolyMatrix::zeros(&r, rows, cols);
                for (k, e) in es.iter().enumerate() {
                    m.set(k / cols.max(1), k % cols.max(1), r.parse(e).unwrap()).unwrap();
                }
                let algebra = PresentedAlgebra::new(Ideal::parse(&r, "x^3 - y^2").unwrap());
                PresentedModule::with_default_labels(algebra, m).unwrap()
            })
    }

    proptest! {
        #![proptest_config(crate::test_util::seeded(40))]

        #[test]
        fn chain_and_shift(m in arb_module()) {
            let top = m.ngens() as i64;
            for i in -1..=top {
                prop_assert!(m.fitting_ideal(i + 1).contains_ideal(&m.fitting_ideal(i)));
                prop_assert!(m.direct_sum_free(1).fitting_ideal(i + 1).equals(&m.fitting_ideal(i)));
            }
        }

        #[test]
        fn presentation_independence(m in arb_module(), a in 0u64..3, b in 0u64..3) {
            prop_assume!(m.matrix().ncols() >= 1);
            let r = m.algebra().ring().clone();
            let (ca, cb) = (r.parse(&format!("{a}*x + 1")).unwrap(), r.parse(&format!("{b}*y")).unwrap());
            let c0 = m.matrix().column(0);
            let c1 = m.matrix().column(m.matrix().ncols() - 1);
            let combo: Vec<Polynomial> = c0.iter().zip(&c1).map(|(u, v)| &(&ca * u) + &(&cb * v)).collect();
            let mut bigger = m.matrix().clone();
            bigger.push_column(combo).unwrap();
            let m2 = PresentedModule::new(m.algebra().clone(), bigger, m.row_labels().to_vec()).unwrap();
            for i in 0..=m.ngens() as i64 {
                prop_assert!(m2.fitting_ideal(i).equals(&m.fitting_ideal(i)));
            }
        }
    }
}
