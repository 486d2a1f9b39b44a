use std::collections::BTreeSet;

use super::{Direction, EmbeddedStart, Shift, ShiftPlan, StateEmbedding};
use crate::convcode::SymbolSequence;
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;
use crate::trellis::{build_error_trellis, TailBitingTrellis, TrellisPath};

/// How the reduced trellis's syndrome relates to the original one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyndromeAlignment {
    /// Identical syndrome sequences.
    Identical,
    /// Row `q` of the reduced syndrome is row `q` of the original rotated
    /// back by its row delay.
    RowDelayed,
    /// Row additions were applied; the syndromes differ by an invertible
    /// transform and are not compared symbol by symbol.
    Transformed,
}

/// Original and reduced error trellises of one received word.
#[derive(Debug, Clone)]
pub struct ReducedErrorTrellis {
    pub plan: ShiftPlan,
    /// The shifted received word `z~`.
    pub shifted_input: SymbolSequence,
    pub original: TailBitingTrellis,
    pub reduced: TailBitingTrellis,
    pub alignment: SyndromeAlignment,
    embedding: Option<StateEmbedding>,
}

impl ReducedErrorTrellis {
    /// State map of a forward plan; `None` for backward plans.
    pub fn embedding(&self) -> Option<&StateEmbedding> {
        self.embedding.as_ref()
    }

    fn require_embedding(&self) -> Result<&StateEmbedding> {
        self.embedding.as_ref().ok_or_else(|| {
            Error::InvalidPlan("state embedding is defined for forward plans only".into())
        })
    }

    /// Reduced paths that restore to the original subtrellis at `sigma`,
    /// sorted by start state then labels.
    pub fn embedded_paths(&self, sigma: u32) -> Result<Vec<TrellisPath>> {
        let emb = self.require_embedding()?;
        let width = self.reduced.label_width();
        let mut out = Vec::new();
        for start in emb.starts(sigma)? {
            let EmbeddedStart { reduced_state, .. } = start;
            let mut paths = self
                .reduced
                .paths_from(reduced_state, |k, label| start.allows(width, k, label))?;
            out.append(&mut paths);
        }
        out.sort();
        Ok(out)
    }

    /// Label sequences of [`Self::embedded_paths`] shifted back.
    pub fn restored_paths(&self, sigma: u32) -> Result<BTreeSet<SymbolSequence>> {
        self.embedded_paths(sigma)?
            .iter()
            .map(|p| self.restore(&p.labels))
            .collect()
    }

    pub fn restore(&self, x: &SymbolSequence) -> Result<SymbolSequence> {
        self.plan.shift.restore(x)
    }
}

/// Builds the reduced error trellis for `z` under `plan`.
///
/// Forward plans must reproduce the syndrome exactly; a mismatch is
/// reported as [`Error::SyndromeMismatch`]. The shifts need
/// `2 * max l_j <= N`.
pub fn reduce_error_trellis(
    h: &PolyMatrix,
    z: &SymbolSequence,
    plan: &ShiftPlan,
) -> Result<ReducedErrorTrellis> {
    if &plan.source != h {
        return Err(Error::InvalidPlan("plan was derived from a different matrix".into()));
    }
    let n = z.len();
    let required = 2 * plan.shift.max_amount() as usize;
    if n < required {
        return Err(Error::LengthTooShort {
            length: n,
            required,
        });
    }
    let original = build_error_trellis(h, z)?;
    let shifted_input = plan.shift.apply(z)?;
    let reduced = build_error_trellis(&plan.reduced, &shifted_input)?;
    let zeta = original.syndrome().expect("error trellis has a syndrome");
    let zeta_reduced = reduced.syndrome().expect("error trellis has a syndrome");
    let alignment = match plan.direction() {
        Direction::Forward => {
            if zeta != zeta_reduced {
                return Err(Error::SyndromeMismatch);
            }
            SyndromeAlignment::Identical
        }
        Direction::Backward if plan.row_operations == 0 => {
            let delays = Shift::new(Direction::Backward, plan.row_delays.clone());
            if &delays.apply(zeta)? != zeta_reduced {
                return Err(Error::SyndromeMismatch);
            }
            if plan.row_delays.iter().all(|&d| d == 0) {
                SyndromeAlignment::Identical
            } else {
                SyndromeAlignment::RowDelayed
            }
        }
        Direction::Backward => SyndromeAlignment::Transformed,
    };
    let embedding = match plan.direction() {
        Direction::Forward => Some(StateEmbedding::new(plan)?),
        Direction::Backward => None,
    };
    Ok(ReducedErrorTrellis {
        plan: plan.clone(),
        shifted_input,
        original,
        reduced,
        alignment,
        embedding,
    })
}
