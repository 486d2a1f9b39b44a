use std::fmt;

use super::bitmatrix::{rank_of, BitMatrix};
use super::poly::{BinaryPoly, Degree};
use crate::error::{Error, Result};

/// An `m x n` matrix of polynomials in `D` over GF(2).
///
/// Parity-check matrices `H(D)` and generator matrices `G(D)` are both stored
/// this way. Row and column indices are 0-based in the API; errors and text
/// output report them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BinaryPoly>,
}

/// Coefficient matrices `[H_0, H_1, ..., H_M]` with `H(D) = sum_i H_i D^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffExpansion {
    matrices: Vec<BitMatrix>,
}

impl CoeffExpansion {
    pub fn matrices(&self) -> &[BitMatrix] {
        &self.matrices
    }

    /// `H_i`, or `None` above the memory length.
    pub fn get(&self, i: usize) -> Option<&BitMatrix> {
        self.matrices.get(i)
    }

    pub fn memory_length(&self) -> usize {
        self.matrices.len() - 1
    }

    /// Rebuilds `sum_i H_i D^i`.
    pub fn reconstruct(&self) -> PolyMatrix {
        let first = &self.matrices[0];
        let mut out = PolyMatrix::zeros(first.rows(), first.cols());
        for (deg, hi) in self.matrices.iter().enumerate() {
            for r in 0..hi.rows() {
                for c in 0..hi.cols() {
                    if hi.get(r, c) {
                        let e = out.get(r, c) + BinaryPoly::monomial(deg as u32);
                        out.set(r, c, e);
                    }
                }
            }
        }
        out
    }
}

/// Outcome of the canonicity test: row-reduced and basic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicityReport {
    pub rows: usize,
    /// Rank of the matrix of highest-row-degree coefficients.
    pub leading_rank: usize,
    /// gcd of all `m x m` minors.
    pub minor_gcd: BinaryPoly,
    /// 0-based rows whose entries share a factor `D^t`, `t >= 1`.
    pub rows_with_monomial_factor: Vec<usize>,
    pub has_zero_row: bool,
}

impl CanonicityReport {
    pub fn row_reduced(&self) -> bool {
        !self.has_zero_row && self.leading_rank == self.rows
    }

    pub fn basic(&self) -> bool {
        self.minor_gcd.is_one()
    }

    pub fn is_canonical(&self) -> bool {
        self.row_reduced() && self.basic()
    }

    /// Short human-readable reason, `canonical` when both conditions hold.
    pub fn diagnostic(&self) -> String {
        if self.has_zero_row {
            return "not canonical (zero row)".into();
        }
        if self.is_canonical() {
            return "canonical".into();
        }
        let mut reasons = Vec::new();
        if !self.rows_with_monomial_factor.is_empty() {
            reasons.push("rows share monomial factors".to_string());
        }
        if !self.basic() && self.rows_with_monomial_factor.is_empty() {
            reasons.push(format!("not basic: gcd of maximal minors is {}", self.minor_gcd));
        }
        if !self.row_reduced() {
            reasons.push(format!(
                "not row-reduced: leading coefficient matrix has rank {} < {}",
                self.leading_rank, self.rows
            ));
        }
        format!("not canonical ({})", reasons.join("; "))
    }
}

/// Result of [`PolyMatrix::reduce_rows_to_canonical`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub matrix: PolyMatrix,
    /// Total power of `D` divided out of each row.
    pub row_delays: Vec<u32>,
    /// Number of `row_i += D^t row_k` operations applied.
    pub row_operations: usize,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![BinaryPoly::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BinaryPoly>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                rows[i].len()
            )));
        }
        Ok(PolyMatrix {
            rows: m,
            cols: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from exponent lists, e.g. `&[&[&[1, 2], &[2]]]` for `(D+D^2, D^2)`.
    pub fn from_exponents(rows: &[&[&[u32]]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| BinaryPoly::from_exponents(e)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BinaryPoly {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: BinaryPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[BinaryPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BinaryPoly> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Maximum entry degree `M`; 0 for the zero matrix.
    pub fn memory_length(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|p| p.degree().finite())
            .max()
            .unwrap_or(0) as usize
    }

    pub fn expand(&self) -> CoeffExpansion {
        let mem = self.memory_length();
        let matrices = (0..=mem)
            .map(|d| {
                let mut hi = BitMatrix::zeros(self.rows, self.cols);
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        hi.set(r, c, self.get(r, c).coeff(d as u32));
                    }
                }
                hi
            })
            .collect();
        CoeffExpansion { matrices }
    }

    /// Largest `l` such that `D^l` divides every entry of column `j`.
    pub fn column_monomial_factor(&self, j: usize) -> Result<u32> {
        self.column(j)
            .iter()
            .filter_map(|p| p.monomial_factor())
            .min()
            .ok_or(Error::ZeroColumn(j + 1))
    }

    /// Degree of each row (max entry degree).
    pub fn row_degrees(&self) -> Result<Vec<u32>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|p| p.degree())
                    .max()
                    .and_then(Degree::finite)
                    .ok_or(Error::ZeroRow(i + 1))
            })
            .collect()
    }

    /// Sum of the row degrees. Equals the overall constraint length only for
    /// canonical matrices.
    pub fn overall_constraint_length(&self) -> Result<u32> {
        Ok(self.row_degrees()?.iter().sum())
    }

    /// Bit matrix whose row `i` holds the coefficients of `D^{deg row i}` in row `i`.
    pub fn leading_coefficient_matrix(&self) -> Result<BitMatrix> {
        let degs = self.row_degrees()?;
        let mut lead = BitMatrix::zeros(self.rows, self.cols);
        for (i, &d) in degs.iter().enumerate() {
            for j in 0..self.cols {
                lead.set(i, j, self.get(i, j).coeff(d));
            }
        }
        Ok(lead)
    }

    /// All `m x m` minors, columns chosen in lexicographic order.
    pub fn maximal_minors(&self) -> Vec<BinaryPoly> {
        let mut out = Vec::new();
        if self.rows > self.cols {
            return out;
        }
        let mut chosen = Vec::with_capacity(self.rows);
        self.collect_minors(0, &mut chosen, &mut out);
        out
    }

    fn collect_minors(&self, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<BinaryPoly>) {
        if chosen.len() == self.rows {
            out.push(self.determinant(0, chosen));
            return;
        }
        for c in start..self.cols {
            chosen.push(c);
            self.collect_minors(c + 1, chosen, out);
            chosen.pop();
        }
    }

    // Laplace expansion along row `row` over the given columns; signs vanish over GF(2).
    fn determinant(&self, row: usize, cols: &[usize]) -> BinaryPoly {
        if cols.is_empty() {
            return BinaryPoly::ONE;
        }
        let mut acc = BinaryPoly::ZERO;
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &c)| c)
                .collect();
            acc += e * self.determinant(row + 1, &rest);
        }
        acc
    }

    pub fn canonicity(&self) -> CanonicityReport {
        let has_zero_row = (0..self.rows).any(|i| self.row(i).iter().all(|p| p.is_zero()));
        let leading_rank = self
            .leading_coefficient_matrix()
            .map(|l| l.rank())
            .unwrap_or(0);
        let minor_gcd = self
            .maximal_minors()
            .into_iter()
            .fold(BinaryPoly::ZERO, BinaryPoly::gcd);
        let rows_with_monomial_factor = (0..self.rows)
            .filter(|&i| row_monomial_factor(self.row(i)).is_some_and(|t| t > 0))
            .collect();
        CanonicityReport {
            rows: self.rows,
            leading_rank,
            minor_gcd,
            rows_with_monomial_factor,
            has_zero_row,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicity().is_canonical()
    }

    /// Divides every row by its monomial factor, then applies row operations
    /// `row_i += D^t row_k` until the leading-coefficient matrix has full rank.
    pub fn reduce_rows_to_canonical(&self) -> Result<RowReduction> {
        let mut rows: Vec<Vec<BinaryPoly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut row_delays = vec![0u32; self.rows];
        for (i, row) in rows.iter_mut().enumerate() {
            row_delays[i] += strip_monomial(row).ok_or(Error::ZeroRow(i + 1))?;
        }
        let mut row_operations = 0;
        loop {
            let current = PolyMatrix::from_rows(rows.clone())?;
            let degs = current.row_degrees()?;
            let lead = current.leading_coefficient_matrix()?;
            let words: Vec<u64> = (0..self.rows).map(|i| lead.row_word(i)).collect();
            let Some(dependency) = find_dependency(&words) else {
                break;
            };
            // Cancel the leading terms of the highest-degree row in the dependency.
            let target = dependency
                .iter()
                .copied()
                .max_by_key(|&i| (degs[i], std::cmp::Reverse(i)))
                .expect("nonempty dependency");
            for &k in dependency.iter().filter(|&&k| k != target) {
                let shift = degs[target] - degs[k];
                for j in 0..self.cols {
                    let add = rows[k][j].shl(shift);
                    rows[target][j] += add;
                }
            }
            row_operations += 1;
            match strip_monomial(&mut rows[target]) {
                Some(t) => row_delays[target] += t,
                None => {
                    return Err(Error::RankDeficient(format!(
                        "row {} vanishes under row reduction",
                        target + 1
                    )))
                }
            }
        }
        let matrix = PolyMatrix::from_rows(rows)?;
        let report = matrix.canonicity();
        if !report.is_canonical() {
            return Err(Error::NotCanonical(report.diagnostic()));
        }
        Ok(RowReduction {
            matrix,
            row_delays,
            row_operations,
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BinaryPoly::ZERO;
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Copy with column `j` divided by `D^l`. Fails unless `D^l` divides the column.
    pub fn with_column_divided(&self, j: usize, l: u32) -> Result<PolyMatrix> {
        let mut out = self.clone();
        for i in 0..self.rows {
            let (q, r) = self.get(i, j).divmod_monomial(l);
            if !r.is_zero() {
                return Err(Error::InvalidPlan(format!(
                    "D^{l} does not divide column {}",
                    j + 1
                )));
            }
            out.set(i, j, q);
        }
        Ok(out)
    }

    /// Copy with column `j` multiplied by `D^l`.
    pub fn with_column_multiplied(&self, j: usize, l: u32) -> PolyMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, j, self.get(i, j).shl(l));
        }
        out
    }
}

fn row_monomial_factor(row: &[BinaryPoly]) -> Option<u32> {
    row.iter().filter_map(|p| p.monomial_factor()).min()
}

/// Divides a row by its monomial factor; `None` for a zero row.
fn strip_monomial(row: &mut [BinaryPoly]) -> Option<u32> {
    let t = row_monomial_factor(row)?;
    for p in row.iter_mut() {
        *p = p.divmod_monomial(t).0;
    }
    Some(t)
}

/// Some nonempty set of row indices whose vectors sum to zero, if the rows are dependent.
fn find_dependency(rows: &[u64]) -> Option<Vec<usize>> {
    if rank_of(rows) == rows.len() {
        return None;
    }
    // Each basis entry carries the set of original rows it combines.
    let mut basis: Vec<(u64, u64)> = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        let (mut v, mut combo) = (r, 1u64 << i);
        for &(b, bc) in &basis {
            if v ^ b < v {
                v ^= b;
                combo ^= bc;
            }
        }
        if v == 0 {
            return Some((0..rows.len()).filter(|k| (combo >> k) & 1 == 1).collect());
        }
        basis.push((v, combo));
        basis.sort_unstable_by_key(|b| std::cmp::Reverse(b.0));
    }
    None
}

impl fmt::Display for PolyMatrix {
    /// One row per line, entries separated by `, `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            f.write_str(&row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn expand_h1() {
        let exp = catalog::h1().expand();
        assert_eq!(exp.matrices().len(), 2);
        assert_eq!(exp.matrices()[0], BitMatrix::from_rows(&[[1u8, 0, 0], [0, 1, 0]]));
        assert_eq!(exp.matrices()[1], BitMatrix::from_rows(&[[0u8, 0, 1], [1, 1, 0]]));
    }

    #[test]
    fn expand_zero_and_h2() {
        let z = PolyMatrix::zeros(2, 3);
        let exp = z.expand();
        assert_eq!(exp.matrices().len(), 1);
        assert!(exp.matrices()[0].is_zero());
        assert_eq!(exp.reconstruct(), z);

        let h2 = catalog::h2();
        assert_eq!(h2.memory_length(), 3);
        assert_eq!(h2.expand().matrices().len(), 4);
        assert_eq!(h2.expand().reconstruct(), h2);
    }

    #[test]
    fn monomial_factors() {
        assert_eq!(catalog::h1().column_monomial_factor(2), Ok(1));
        assert_eq!(catalog::h1().column_monomial_factor(0), Ok(0));
        assert_eq!(catalog::h2().column_monomial_factor(0), Ok(2));
        let mut m = catalog::h1();
        m.set(0, 1, BinaryPoly::ZERO);
        m.set(1, 1, BinaryPoly::ZERO);
        assert_eq!(m.column_monomial_factor(1), Err(Error::ZeroColumn(2)));
    }

    #[test]
    fn row_degrees_and_constraint_length() {
        assert_eq!(catalog::h2().row_degrees(), Ok(vec![3, 2]));
        assert_eq!(catalog::h2().overall_constraint_length(), Ok(5));
        assert_eq!(catalog::h1().row_degrees(), Ok(vec![1, 1]));
        assert_eq!(catalog::h1().overall_constraint_length(), Ok(2));
        assert_eq!(catalog::h1_reduced().row_degrees(), Ok(vec![0, 1]));
        assert_eq!(catalog::h1_reduced().overall_constraint_length(), Ok(1));
        assert_eq!(catalog::h2_reduced().overall_constraint_length(), Ok(3));
        let mut z = catalog::h1();
        for j in 0..3 {
            z.set(1, j, BinaryPoly::ZERO);
        }
        assert_eq!(z.row_degrees(), Err(Error::ZeroRow(2)));
    }

    #[test]
    fn canonicity_of_reference_matrices() {
        let r = catalog::h1().canonicity();
        assert!(r.is_canonical(), "{}", r.diagnostic());
        assert!(catalog::h1_reduced().is_canonical());
        assert!(catalog::h2().is_canonical());
        assert!(catalog::h2_reduced().is_canonical());
        assert!(catalog::g1().is_canonical());
        assert!(catalog::g1_reduced().is_canonical());

        let r = catalog::h2_delayed().canonicity();
        assert!(!r.is_canonical());
        assert!(r.row_reduced());
        assert!(!r.basic());
        assert_eq!(r.rows_with_monomial_factor, vec![0, 1]);
        assert_eq!(r.diagnostic(), "not canonical (rows share monomial factors)");
    }

    #[test]
    fn canonicity_diagnostics_separate_conditions() {
        // (1+D, 1+D^2): gcd of minors 1+D, row-reduced.
        let m = PolyMatrix::from_exponents(&[&[&[0, 1], &[0, 2]]]).unwrap();
        let r = m.canonicity();
        assert!(r.row_reduced() && !r.basic());
        assert!(r.diagnostic().contains("not basic"));
        // Equal leading rows: not row-reduced.
        let m = PolyMatrix::from_exponents(&[&[&[1], &[0], &[]], &[&[1], &[], &[0]]]).unwrap();
        let r = m.canonicity();
        assert!(!r.row_reduced());
        assert!(r.diagnostic().contains("not row-reduced"));
    }

    #[test]
    fn reduce_delayed_h2() {
        let red = catalog::h2_delayed().reduce_rows_to_canonical().unwrap();
        assert_eq!(red.matrix, catalog::h2_reduced());
        assert_eq!(red.row_delays, vec![2, 2]);
        assert_eq!(red.row_operations, 0);
    }

    #[test]
    fn reduce_fixed_point_and_degenerate() {
        let red = catalog::h1().reduce_rows_to_canonical().unwrap();
        assert_eq!(red.matrix, catalog::h1());
        assert_eq!(red.row_delays, vec![0, 0]);

        let bad = PolyMatrix::from_exponents(&[&[&[1], &[2]], &[&[2], &[3]]]).unwrap();
        assert!(matches!(bad.reduce_rows_to_canonical(), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn reduce_applies_row_operations() {
        // rows (1+D, D, 1) and (D, 1+D, 0): leading vectors (1,1,0) twice.
        let m = PolyMatrix::from_exponents(&[&[&[0, 1], &[1], &[0]], &[&[1], &[0, 1], &[]]]).unwrap();
        let red = m.reduce_rows_to_canonical().unwrap();
        assert!(red.matrix.is_canonical());
        assert!(red.row_operations >= 1);
        assert!(red.matrix.overall_constraint_length().unwrap() < m.overall_constraint_length().unwrap());
    }

    #[test]
    fn column_divide_multiply_round_trip() {
        let h2 = catalog::h2();
        assert_eq!(h2.with_column_divided(0, 2).unwrap(), catalog::h2_reduced());
        assert_eq!(h2.with_column_divided(0, 2).unwrap().with_column_multiplied(0, 2), h2);
        assert!(h2.with_column_divided(0, 3).is_err());
    }

    #[test]
    fn duality_products() {
        let gh = catalog::g1().mul(&catalog::h1().transpose()).unwrap();
        assert!(gh.is_zero());
    }
}
