use std::collections::BTreeSet;

use super::{best_column_division, EmbeddedStart, Shift, ShiftPlan};
use super::Direction;
use crate::convcode::{Encoder, EncoderState, SymbolSequence};
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;
use crate::trellis::{build_code_trellis, TailBitingTrellis, TrellisPath};

/// Reduced start state and forced wrapped code bits for one encoder state.
pub type CodeRestriction = EmbeddedStart;

/// Code trellis of `G(D)` and of `G(D)` with column factors divided out.
///
/// Dividing column `j` by `D^{l_j}` turns `y^{(j)}` into
/// `y~^{(j)}_k = y^{(j)}_{<k+l_j>}` (a backward shift). The reduced
/// encoder's state keeps the newest inputs of each row; the code bits
/// `y^{(j)}_1..y^{(j)}_{l_j}`, which become the last `l_j` bits of
/// `y~^{(j)}`, depend only on the wrapped inputs held in the original state.
#[derive(Debug, Clone)]
pub struct ReducedCodeTrellis {
    pub plan: ShiftPlan,
    pub original: TailBitingTrellis,
    pub reduced: TailBitingTrellis,
    encoder: Encoder,
    reduced_encoder: Encoder,
}

impl ReducedCodeTrellis {
    /// Where the original subtrellis at `beta` lives in the reduced trellis.
    pub fn restriction(&self, beta: u32) -> Result<CodeRestriction> {
        let nu = self.encoder.state_bits();
        if nu < 32 && beta >> nu != 0 {
            return Err(Error::UnknownState(crate::bits::fmt_tuple(beta, nu.max(1))));
        }
        let n = self.original.len();
        let reduced_state = self
            .reduced_encoder
            .state_from_inputs(|r, age| self.encoder.state_input(beta, r, age));
        let expansion = self.plan.source.expand();
        let degrees = self.encoder.row_degrees();
        let mut forced = Vec::new();
        for j in 0..self.plan.source.cols() {
            let l = self.plan.shift.amount(j) as usize;
            for t in 1..=l {
                // y^{(j)}_t = sum_{r, i >= l} u^{(r)}_{t-i} G_i[r][j]; u_{t-i} wrapped is age i-t at time N.
                let mut bit = false;
                for (r, &d) in degrees.iter().enumerate() {
                    for i in l..=d as usize {
                        if expansion.matrices()[i].get(r, j) {
                            bit ^= self.encoder.state_input(beta, r, i - t);
                        }
                    }
                }
                forced.push((j, n - l + t, bit));
            }
        }
        forced.sort();
        Ok(CodeRestriction {
            reduced_state,
            forced,
        })
    }

    /// Reduced paths corresponding to the original subtrellis at `beta`.
    pub fn embedded_paths(&self, beta: u32) -> Result<Vec<TrellisPath>> {
        let r = self.restriction(beta)?;
        let width = self.reduced.label_width();
        self.reduced
            .paths_from(r.reduced_state, |k, label| r.allows(width, k, label))
    }

    /// Codewords of the original subtrellis at `beta`, recovered from the reduced trellis.
    pub fn restored_codewords(&self, beta: u32) -> Result<BTreeSet<SymbolSequence>> {
        self.embedded_paths(beta)?
            .iter()
            .map(|p| self.restore(&p.labels))
            .collect()
    }

    pub fn restore(&self, y: &SymbolSequence) -> Result<SymbolSequence> {
        self.plan.shift.restore(y)
    }

    pub fn format_state(&self, beta: u32) -> String {
        EncoderState {
            bits: beta,
            width: self.encoder.state_bits(),
        }
        .to_string()
    }
}

/// Divides the columns of a canonical `G(D)` by monomial factors, choosing
/// the smallest reduced state space, and builds both trellises.
pub fn reduce_code_trellis(g: &PolyMatrix, n_sections: usize) -> Result<ReducedCodeTrellis> {
    let (amounts, reduced) = best_column_division(g)?;
    let before = g.overall_constraint_length()?;
    let after = reduced.overall_constraint_length()?;
    if after >= before {
        return Err(Error::NoStateReduction { before, after });
    }
    let required = 2 * amounts.iter().copied().max().unwrap_or(0) as usize;
    if n_sections < required {
        return Err(Error::LengthTooShort {
            length: n_sections,
            required,
        });
    }
    let plan = ShiftPlan {
        shift: Shift::new(Direction::Backward, amounts),
        source: g.clone(),
        delayed: None,
        reduced: reduced.clone(),
        row_delays: vec![0; g.rows()],
        row_operations: 0,
    };
    Ok(ReducedCodeTrellis {
        original: build_code_trellis(g, n_sections)?,
        reduced: build_code_trellis(&reduced, n_sections)?,
        encoder: Encoder::new(g)?,
        reduced_encoder: Encoder::new(&reduced)?,
        plan,
    })
}
