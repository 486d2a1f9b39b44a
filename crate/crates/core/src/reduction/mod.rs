//! Trellis reduction by cyclically shifting subsequences.
//!
//! When column `j` of `H(D)` is `D^{l_j}` times a polynomial column, the
//! syndrome is unchanged if that column is divided by `D^{l_j}` and the
//! `j`-th error component is delayed by `l_j` time units. On a tail-biting
//! trellis the delay is a cyclic shift, so the reduced trellis is again
//! tail-biting and every original path is recovered by shifting back.
//!
//! A *forward* shift moves component `j` of symbol `k` to symbol
//! `<k + l_j>` (`x~_k = x_{<k-l_j>}`); a *backward* shift moves it the
//! other way. Dividing a column of `H(D)` calls for a forward shift of the
//! errors; multiplying columns of `H(D)`, or dividing a column of `G(D)`,
//! calls for a backward one.

mod code;
mod embedding;
mod error_trellis;

use std::fmt;
use std::str::FromStr;

pub use code::{reduce_code_trellis, CodeRestriction, ReducedCodeTrellis};
pub use embedding::{
    admissible_segments, map_state, AdmissibleBit, EmbeddedStart, Forced, StateEmbedding,
};
pub use error_trellis::{reduce_error_trellis, ReducedErrorTrellis, SyndromeAlignment};

use crate::bits;
use crate::convcode::SymbolSequence;
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;

/// Candidate shift vectors examined by the planner before it falls back
/// to dividing out full column factors.
const SEARCH_LIMIT: u64 = 1 << 12;

/// Ranking of a candidate division: reduced constraint length, total shift, amounts.
type SearchKey = (u32, u32, Vec<u32>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// Per-column cyclic shift amounts with a common direction.
///
/// Columns beyond `amounts.len()` are not shifted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shift {
    direction: Direction,
    amounts: Vec<u32>,
}

impl Shift {
    pub fn new(direction: Direction, amounts: Vec<u32>) -> Self {
        Shift { direction, amounts }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn amounts(&self) -> &[u32] {
        &self.amounts
    }

    /// Shift amount of column `j` (0-based).
    pub fn amount(&self, j: usize) -> u32 {
        self.amounts.get(j).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.amounts.iter().all(|&l| l == 0)
    }

    pub fn max_amount(&self) -> u32 {
        self.amounts.iter().copied().max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Shift {
        Shift {
            direction: self.direction.flip(),
            amounts: self.amounts.clone(),
        }
    }

    fn check_width(&self, x: &SymbolSequence) -> Result<()> {
        if let Some(j) = (x.width()..self.amounts.len()).find(|&j| self.amounts[j] != 0) {
            return Err(Error::Dimension(format!(
                "shift refers to column {} but symbols have {} bits",
                j + 1,
                x.width()
            )));
        }
        Ok(())
    }

    /// Forward: component `j` of the result at time `k` is component `j`
    /// of `x` at `<k - l_j>`. Backward: at `<k + l_j>`.
    pub fn apply(&self, x: &SymbolSequence) -> Result<SymbolSequence> {
        self.check_width(x)?;
        let w = x.width();
        let sign = match self.direction {
            Direction::Forward => -1,
            Direction::Backward => 1,
        };
        let symbols = (1..=x.len() as i64)
            .map(|k| {
                (0..w).fold(0u32, |acc, j| {
                    let src = x.cyclic_index(k + sign * self.amount(j) as i64);
                    if x.bit(src, j) {
                        acc | bits::unit(w, j)
                    } else {
                        acc
                    }
                })
            })
            .collect();
        SymbolSequence::new(w, symbols)
    }

    /// Inverse of [`Shift::apply`].
    pub fn restore(&self, x: &SymbolSequence) -> Result<SymbolSequence> {
        self.inverse().apply(x)
    }
}

impl fmt::Display for Shift {
    /// One `column j: <direction> l` line per shifted column, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, &l) in self.amounts.iter().enumerate() {
            if l != 0 {
                writeln!(f, "column {}: {} {l}", j + 1, self.direction)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Shift {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut direction = None;
        let mut amounts: Vec<u32> = Vec::new();
        for (idx, line) in s.lines().enumerate() {
            let line_no = idx + 1;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Parse {
                line: line_no,
                column: 1,
                message,
            };
            let rest = text
                .strip_prefix("column")
                .ok_or_else(|| bad(format!("expected `column j: forward|backward l`, got `{text}`")))?;
            let (col, spec) = rest
                .split_once(':')
                .ok_or_else(|| bad("missing `:`".into()))?;
            let j: usize = col
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad column `{}`", col.trim())))?;
            if j == 0 {
                return Err(bad("columns are numbered from 1".into()));
            }
            let mut words = spec.split_whitespace();
            let dir = match words.next() {
                Some("forward") => Direction::Forward,
                Some("backward") => Direction::Backward,
                other => return Err(bad(format!("bad direction `{}`", other.unwrap_or("")))),
            };
            let l: u32 = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| bad("missing shift amount".into()))?;
            if words.next().is_some() {
                return Err(bad("trailing text".into()));
            }
            if *direction.get_or_insert(dir) != dir {
                return Err(bad("a plan cannot mix forward and backward shifts".into()));
            }
            if amounts.len() < j {
                amounts.resize(j, 0);
            }
            if amounts[j - 1] != 0 {
                return Err(bad(format!("column {j} listed twice")));
            }
            amounts[j - 1] = l;
        }
        Ok(Shift {
            direction: direction.unwrap_or(Direction::Forward),
            amounts,
        })
    }
}

/// A shift together with the matrix it was derived from and the reduced matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftPlan {
    pub shift: Shift,
    pub source: PolyMatrix,
    /// For backward plans on `H(D)`: the source with its columns multiplied,
    /// before row re-canonicalization.
    pub delayed: Option<PolyMatrix>,
    pub reduced: PolyMatrix,
    /// Power of `D` divided out of each row during re-canonicalization.
    pub row_delays: Vec<u32>,
    /// Row additions applied during re-canonicalization.
    pub row_operations: usize,
}

impl ShiftPlan {
    pub fn direction(&self) -> Direction {
        self.shift.direction
    }

    pub fn source_constraint_length(&self) -> u32 {
        self.source.overall_constraint_length().unwrap_or(0)
    }

    pub fn reduced_constraint_length(&self) -> u32 {
        self.reduced.overall_constraint_length().unwrap_or(0)
    }
}

/// Picks per-column divisors `D^{l_j}`, `0 <= l_j <= factor_j`, giving a
/// canonical matrix of smallest overall constraint length, preferring the
/// smallest total shift.
fn best_column_division(m: &PolyMatrix) -> Result<(Vec<u32>, PolyMatrix)> {
    let source = m.canonicity();
    if !source.is_canonical() {
        return Err(Error::NotCanonical(source.diagnostic()));
    }
    let factors: Vec<u32> = (0..m.cols())
        .map(|j| m.column_monomial_factor(j).unwrap_or(0))
        .collect();
    if factors.iter().all(|&f| f == 0) {
        return Err(Error::EmptyPlan);
    }
    let divide = |amounts: &[u32]| -> PolyMatrix {
        amounts
            .iter()
            .enumerate()
            .fold(m.clone(), |acc, (j, &l)| {
                acc.with_column_divided(j, l).expect("l_j within the column factor")
            })
    };
    let combos: u64 = factors.iter().map(|&f| f as u64 + 1).product();
    let candidates: Vec<Vec<u32>> = if combos <= SEARCH_LIMIT {
        let mut all = vec![vec![]];
        for &f in &factors {
            all = all
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=f).map(move |l| {
                        let mut v = prefix.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
        all.retain(|v| v.iter().any(|&l| l > 0));
        all
    } else {
        vec![factors.clone()]
    };
    let mut best: Option<(SearchKey, PolyMatrix)> = None;
    for amounts in candidates {
        let reduced = divide(&amounts);
        if !reduced.is_canonical() {
            continue;
        }
        let nu = reduced.overall_constraint_length()?;
        let key = (nu, amounts.iter().sum::<u32>(), amounts);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, reduced));
        }
    }
    match best {
        Some(((_, _, amounts), reduced)) => Ok((amounts, reduced)),
        None => Err(Error::NotCanonical(format!(
            "{} after dividing out the column factors",
            divide(&factors).canonicity().diagnostic()
        ))),
    }
}

/// Divides columns of a canonical `H(D)` by their monomial factors.
///
/// Each `l_j` ranges over `0..=` the factor of column `j`; the plan with the
/// smallest reduced overall constraint length wins, ties going to the
/// smallest total shift. Fails unless the reduction is strict.
pub fn plan_forward_reduction(h: &PolyMatrix) -> Result<ShiftPlan> {
    let (amounts, reduced) = best_column_division(h)?;
    let before = h.overall_constraint_length()?;
    let after = reduced.overall_constraint_length()?;
    if after >= before {
        return Err(Error::NoStateReduction { before, after });
    }
    Ok(ShiftPlan {
        shift: Shift::new(Direction::Forward, amounts),
        source: h.clone(),
        delayed: None,
        reduced,
        row_delays: vec![0; h.rows()],
        row_operations: 0,
    })
}

/// Multiplies column `j` of `H(D)` by `D^{amounts[j]}` and re-canonicalizes
/// the rows. The errors of those columns are shifted backward.
pub fn plan_backward_reduction(h: &PolyMatrix, amounts: &[u32]) -> Result<ShiftPlan> {
    if amounts.len() > h.cols() {
        return Err(Error::Dimension(format!(
            "{} shift amounts for {} columns",
            amounts.len(),
            h.cols()
        )));
    }
    if amounts.iter().all(|&l| l == 0) {
        return Err(Error::EmptyPlan);
    }
    let source = h.canonicity();
    if !source.is_canonical() {
        return Err(Error::NotCanonical(source.diagnostic()));
    }
    let delayed = amounts
        .iter()
        .enumerate()
        .fold(h.clone(), |acc, (j, &l)| acc.with_column_multiplied(j, l));
    let red = delayed.reduce_rows_to_canonical()?;
    let mut full = amounts.to_vec();
    full.resize(h.cols(), 0);
    Ok(ShiftPlan {
        shift: Shift::new(Direction::Backward, full),
        source: h.clone(),
        delayed: Some(delayed),
        reduced: red.matrix,
        row_delays: red.row_delays,
        row_operations: red.row_operations,
    })
}

/// Rebuilds the plan for `h` described by an explicit shift, e.g. one read
/// back from a plan file.
///
/// A forward shift divides columns (each `l_j` must divide column `j`);
/// a backward shift multiplies them, as in [`plan_backward_reduction`].
pub fn plan_from_shift(h: &PolyMatrix, shift: &Shift) -> Result<ShiftPlan> {
    if shift.amounts().len() > h.cols() && shift.amounts()[h.cols()..].iter().any(|&l| l != 0) {
        return Err(Error::Dimension(format!(
            "plan shifts column {} of a {}-column matrix",
            shift.amounts().len(),
            h.cols()
        )));
    }
    let mut amounts = shift.amounts().to_vec();
    amounts.resize(h.cols(), 0);
    match shift.direction() {
        Direction::Backward => plan_backward_reduction(h, &amounts),
        Direction::Forward => {
            if amounts.iter().all(|&l| l == 0) {
                return Err(Error::EmptyPlan);
            }
            let source = h.canonicity();
            if !source.is_canonical() {
                return Err(Error::NotCanonical(source.diagnostic()));
            }
            let mut reduced = h.clone();
            for (j, &l) in amounts.iter().enumerate() {
                reduced = reduced.with_column_divided(j, l)?;
            }
            let report = reduced.canonicity();
            if !report.is_canonical() {
                return Err(Error::NotCanonical(format!("{} after the shift", report.diagnostic())));
            }
            let before = h.overall_constraint_length()?;
            let after = reduced.overall_constraint_length()?;
            if after >= before {
                return Err(Error::NoStateReduction { before, after });
            }
            Ok(ShiftPlan {
                shift: Shift::new(Direction::Forward, amounts),
                source: h.clone(),
                delayed: None,
                reduced,
                row_delays: vec![0; h.rows()],
                row_operations: 0,
            })
        }
    }
}

/// `x~` for the plan's shift, see [`Shift::apply`].
pub fn shift_sequence(x: &SymbolSequence, plan: &ShiftPlan) -> Result<SymbolSequence> {
    plan.shift.apply(x)
}

/// Inverse of [`shift_sequence`].
pub fn restore_sequence(x: &SymbolSequence, plan: &ShiftPlan) -> Result<SymbolSequence> {
    plan.shift.restore(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn seq(s: &str) -> SymbolSequence {
        s.parse().unwrap()
    }

    #[test]
    fn forward_plan_for_h1() {
        let plan = plan_forward_reduction(&catalog::h1()).unwrap();
        assert_eq!(plan.shift.amounts(), &[0, 0, 1]);
        assert_eq!(plan.reduced, catalog::h1_reduced());
        assert_eq!(plan.source_constraint_length(), 2);
        assert_eq!(plan.reduced_constraint_length(), 1);
    }

    #[test]
    fn forward_plan_for_h2() {
        let plan = plan_forward_reduction(&catalog::h2()).unwrap();
        assert_eq!(plan.shift.amounts(), &[2, 0, 0]);
        assert_eq!(plan.reduced, catalog::h2_reduced());
        assert_eq!((plan.source_constraint_length(), plan.reduced_constraint_length()), (5, 3));
    }

    #[test]
    fn no_factor_means_empty_plan() {
        let h = PolyMatrix::from_exponents(&[&[&[0, 2], &[0, 1], &[0]]]).unwrap();
        assert!(h.is_canonical());
        assert_eq!(plan_forward_reduction(&h), Err(Error::EmptyPlan));
    }

    #[test]
    fn factor_without_gain_is_rejected() {
        // Column 2 carries D but dividing it leaves the row degree at 1.
        let h = PolyMatrix::from_exponents(&[&[&[0, 1], &[1]]]).unwrap();
        assert!(h.is_canonical());
        assert_eq!(
            plan_forward_reduction(&h),
            Err(Error::NoStateReduction { before: 1, after: 1 })
        );
    }

    #[test]
    fn backward_plan_for_h2() {
        let plan = plan_backward_reduction(&catalog::h2(), &[0, 2, 2]).unwrap();
        assert_eq!(plan.delayed.as_ref().unwrap(), &catalog::h2_delayed());
        assert_eq!(plan.reduced, catalog::h2_reduced());
        assert_eq!(plan.row_delays, vec![2, 2]);
        assert_eq!(plan.direction(), Direction::Backward);
    }

    #[test]
    fn global_delay_is_a_no_op() {
        let plan = plan_backward_reduction(&catalog::h2(), &[1, 1, 1]).unwrap();
        assert_eq!(plan.reduced, catalog::h2());
        assert_eq!(plan.row_delays, vec![1, 1]);
    }

    #[test]
    fn backward_plan_for_h1_matches_forward() {
        let plan = plan_backward_reduction(&catalog::h1(), &[1, 1, 0]).unwrap();
        assert_eq!(plan.reduced, catalog::h1_reduced());
        assert_eq!(plan_backward_reduction(&catalog::h1(), &[0, 0, 0]), Err(Error::EmptyPlan));
    }

    #[test]
    fn shift_reference_word() {
        let plan = plan_forward_reduction(&catalog::h1()).unwrap();
        let zt = shift_sequence(&catalog::z1(), &plan).unwrap();
        assert_eq!(zt.to_string(), "111 100 101 011");
        assert_eq!(restore_sequence(&zt, &plan).unwrap(), catalog::z1());
    }

    #[test]
    fn restore_reference_paths() {
        let plan = plan_forward_reduction(&catalog::h1()).unwrap();
        let r = |s: &str| restore_sequence(&seq(s), &plan).unwrap().to_string();
        assert_eq!(r("101 110 010 110"), "100 110 010 111");
        assert_eq!(r("101 110 111 001"), "100 111 111 001");
        assert_eq!(r("101 011 000 001"), "101 010 001 001");
        assert_eq!(r("101 011 101 110"), "101 011 100 111");
        assert!(r("000 000 000 000") == "000 000 000 000");
    }

    #[test]
    fn plan_from_shift_reproduces_searched_plans() {
        let h = catalog::h2();
        let fwd = plan_forward_reduction(&h).unwrap();
        assert_eq!(plan_from_shift(&h, &fwd.shift.to_string().parse().unwrap()).unwrap(), fwd);
        let bwd = plan_backward_reduction(&h, &[0, 2, 2]).unwrap();
        assert_eq!(plan_from_shift(&h, &bwd.shift).unwrap(), bwd);
        let too_far = Shift::new(Direction::Forward, vec![3]);
        assert!(matches!(plan_from_shift(&h, &too_far), Err(Error::InvalidPlan(_))));
        let one_step = plan_from_shift(&h, &Shift::new(Direction::Forward, vec![1])).unwrap();
        assert_eq!(one_step.reduced_constraint_length(), 4);
        let flat = PolyMatrix::from_exponents(&[&[&[0, 1], &[1]]]).unwrap();
        let no_gain = Shift::new(Direction::Forward, vec![0, 1]);
        assert!(matches!(plan_from_shift(&flat, &no_gain), Err(Error::NoStateReduction { .. })));
    }

    #[test]
    fn identity_shift() {
        let s = Shift::new(Direction::Forward, vec![0, 0, 0]);
        assert!(s.is_identity());
        assert_eq!(s.apply(&catalog::z1()).unwrap(), catalog::z1());
    }

    #[test]
    fn shift_rejects_out_of_range_columns() {
        let s = Shift::new(Direction::Forward, vec![0, 0, 0, 1]);
        assert!(s.apply(&catalog::z1()).is_err());
    }

    #[test]
    fn plan_text_round_trip() {
        let s = Shift::new(Direction::Backward, vec![0, 2, 2]);
        let text = s.to_string();
        assert_eq!(text, "column 2: backward 2\ncolumn 3: backward 2\n");
        let back: Shift = text.parse().unwrap();
        assert_eq!(back.amounts(), &[0, 2, 2]);
        assert_eq!(back.direction(), Direction::Backward);
        assert!("column 1: forward 1\ncolumn 2: backward 1".parse::<Shift>().is_err());
        assert!("column 0: forward 1".parse::<Shift>().is_err());
        assert!("col 1 forward".parse::<Shift>().is_err());
        assert!("".parse::<Shift>().unwrap().is_identity());
    }
}
