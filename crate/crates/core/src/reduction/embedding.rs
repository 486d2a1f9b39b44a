//! Which reduced paths correspond to an original subtrellis.
//!
//! Every quantity involved is a linear function of the last `M` error
//! symbols `e_{N-M+1}, ..., e_N` (the *window*): the original state
//! `sigma_N`, the reduced state `sigma~_N` (through
//! `e~^{(j)}_t = e^{(j)}_{t-l_j}`) and the components that wrap around,
//! `e^{(j)}_{N-l_j+t}` for `t = 1..=l_j`, which become the first `l_j`
//! symbols of `e~^{(j)}`. Fixing `sigma_N` constrains the window to an
//! affine subspace; its image under the other two maps lists the reduced
//! start states together with the wrapped bits they force.

use std::collections::BTreeMap;

use super::{Direction, ShiftPlan};
use crate::bits;
use crate::error::{Error, Result};
use crate::gf2poly::{dot, rank_of, solve_affine, PolyMatrix};

/// Largest number of (state, tail) pairs enumerated for one original state.
const IMAGE_BUDGET_BITS: u32 = 20;

/// A bit of the reduced error sequence fixed by the original start state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Forced {
    Bit(bool),
    /// Depends on information the original state does not determine.
    Free,
}

/// Constraint on component `column` (0-based) of reduced section `section` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleBit {
    pub column: usize,
    pub section: usize,
    pub value: Forced,
}

/// One reduced start state with the wrapped bits that go with it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddedStart {
    pub reduced_state: u32,
    /// `(column, section, bit)`, sorted by column then section.
    pub forced: Vec<(usize, usize, bool)>,
}

impl EmbeddedStart {
    /// Whether branch `label` in section `section` respects the forced bits.
    pub fn allows(&self, width: usize, section: usize, label: u32) -> bool {
        self.forced
            .iter()
            .filter(|f| f.1 == section)
            .all(|&(j, _, b)| bits::get(label, width, j) == b)
    }
}

/// Original state to reduced state map of a forward plan at a fixed length.
#[derive(Debug, Clone)]
pub struct StateEmbedding {
    n: usize,
    vars: usize,
    nu: usize,
    nu_reduced: usize,
    /// Original compact state bits as forms over the window.
    original: Vec<u64>,
    /// Reduced compact state bits followed by the wrapped bits.
    image: Vec<u64>,
    /// `(column, section)` of each wrapped bit, aligned with `image[nu_reduced..]`.
    tail: Vec<(usize, usize)>,
    /// Basis of the image of the window subspace that leaves `sigma` at zero.
    ambiguity: Vec<u64>,
}

/// Compacted syndrome-former state bits of `h` as forms over the window,
/// where the error of column `j` at time `N - a` is variable
/// `(M - 1 - a - delay[j]) * n + j`.
fn state_forms(h: &PolyMatrix, window: usize, delay: &[u32]) -> Result<Vec<u64>> {
    let n = h.cols();
    let degrees = h.row_degrees()?;
    let expansion = h.expand();
    let mem = h.memory_length();
    let mut forms = Vec::new();
    for p in 1..=mem {
        for q in 0..h.rows() {
            if p as u32 > degrees[q] {
                continue;
            }
            let mut form = 0u64;
            for i in p..=mem {
                let hi = &expansion.matrices()[i];
                for j in 0..n {
                    if !hi.get(q, j) {
                        continue;
                    }
                    let age = (i - p) + delay[j] as usize;
                    if age >= window {
                        return Err(Error::InvalidPlan(format!(
                            "column {} reaches outside the state window",
                            j + 1
                        )));
                    }
                    form ^= 1 << ((window - 1 - age) * n + j);
                }
            }
            forms.push(form);
        }
    }
    Ok(forms)
}

/// Reduces `v` against an echelon basis kept sorted by leading bit.
fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let lead = 63 - b.leading_zeros();
        if (v >> lead) & 1 == 1 {
            v ^= b;
        }
    }
    v
}

fn insert(basis: &mut Vec<u64>, v: u64) {
    let r = reduce(basis, v);
    if r != 0 {
        basis.push(r);
        basis.sort_by_key(|b| std::cmp::Reverse(63 - b.leading_zeros()));
        // Keep the basis fully reduced so `reduce` is order independent.
        let snapshot = basis.clone();
        for (i, b) in basis.iter_mut().enumerate() {
            let mut x = *b;
            for (k, &o) in snapshot.iter().enumerate() {
                if k != i {
                    let lead = 63 - o.leading_zeros();
                    if (x >> lead) & 1 == 1 {
                        x ^= o;
                    }
                }
            }
            *b = x;
        }
    }
}

impl StateEmbedding {
    /// Builds the embedding of a forward plan. Sequences it is applied to
    /// need `N >= 2 * max l_j`.
    pub fn new(plan: &ShiftPlan) -> Result<Self> {
        if plan.direction() != Direction::Forward {
            return Err(Error::InvalidPlan(
                "state embedding is defined for forward plans only".into(),
            ));
        }
        let h = &plan.source;
        let n = h.cols();
        let window = h.memory_length();
        let vars = n * window;
        if vars > 64 {
            return Err(Error::Dimension(format!(
                "state window of {vars} bits, at most 64 supported"
            )));
        }
        let original = state_forms(h, window, &vec![0; n])?;
        let mut image = state_forms(&plan.reduced, window, plan.shift.amounts())?;
        let nu_reduced = image.len();
        let mut tail = Vec::new();
        for j in 0..n {
            let l = plan.shift.amount(j) as usize;
            if l > window {
                return Err(Error::InvalidPlan(format!(
                    "shift of column {} exceeds the memory length",
                    j + 1
                )));
            }
            for t in 1..=l {
                // e^{(j)}_{N-l+t} is `l - t` steps old at time N and
                // reappears as e~^{(j)}_t.
                let age = l - t;
                image.push(1 << ((window - 1 - age) * n + j));
                tail.push((j, t));
            }
        }
        if image.len() > 64 {
            return Err(Error::Dimension("too many wrapped bits".into()));
        }
        let kernel = solve_affine(&original, 0, vars)
            .expect("homogeneous system is consistent")
            .kernel;
        let mut ambiguity = Vec::new();
        for w in kernel {
            insert(&mut ambiguity, Self::eval(&image, w));
        }
        Ok(StateEmbedding {
            n,
            vars,
            nu: original.len(),
            nu_reduced,
            original,
            image,
            tail,
            ambiguity,
        })
    }

    fn eval(forms: &[u64], w: u64) -> u64 {
        forms
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &f)| if dot(f, w) { acc | 1 << i } else { acc })
    }

    pub fn state_bits(&self) -> usize {
        self.nu
    }

    pub fn reduced_state_bits(&self) -> usize {
        self.nu_reduced
    }

    /// True when every reachable original state has exactly one image.
    pub fn is_determinate(&self) -> bool {
        self.ambiguity.is_empty()
    }

    /// Rank of the window-to-original-state map; states outside its image
    /// never occur at time `N`.
    pub fn reachable_rank(&self) -> usize {
        rank_of(&self.original)
    }

    fn particular(&self, sigma: u32) -> Result<u64> {
        if self.nu < 32 && sigma >> self.nu != 0 {
            return Err(Error::UnknownState(bits::fmt_tuple(sigma, self.nu.max(1))));
        }
        let rhs = (0..self.nu).fold(0u64, |acc, i| {
            if bits::get(sigma, self.nu, i) {
                acc | 1 << i
            } else {
                acc
            }
        });
        let sol = solve_affine(&self.original, rhs, self.vars).ok_or_else(|| {
            Error::ContradictoryState(bits::fmt_tuple(sigma, self.nu))
        })?;
        Ok(Self::eval(&self.image, sol.particular))
    }

    fn split(&self, packed: u64) -> EmbeddedStart {
        let reduced_state = (0..self.nu_reduced).fold(0u32, |acc, i| {
            bits::set(acc, self.nu_reduced, i, (packed >> i) & 1 == 1)
        });
        let mut forced: Vec<(usize, usize, bool)> = self
            .tail
            .iter()
            .enumerate()
            .map(|(t, &(j, k))| (j, k, (packed >> (self.nu_reduced + t)) & 1 == 1))
            .collect();
        forced.sort();
        EmbeddedStart {
            reduced_state,
            forced,
        }
    }

    /// Every reduced start state, with its forced wrapped bits, compatible
    /// with original state `sigma`. Sorted.
    pub fn starts(&self, sigma: u32) -> Result<Vec<EmbeddedStart>> {
        let base = self.particular(sigma)?;
        let dim = self.ambiguity.len() as u32;
        if dim > IMAGE_BUDGET_BITS {
            return Err(Error::BudgetExceeded {
                required_bits: dim,
                budget_bits: IMAGE_BUDGET_BITS,
            });
        }
        let mut out: Vec<EmbeddedStart> = (0..1u64 << dim)
            .map(|c| {
                let packed = self
                    .ambiguity
                    .iter()
                    .enumerate()
                    .fold(base, |acc, (i, &b)| if (c >> i) & 1 == 1 { acc ^ b } else { acc });
                self.split(packed)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// The reduced state at time `N` of every path through original state `sigma`.
    pub fn map_state(&self, sigma: u32) -> Result<u32> {
        let base = self.particular(sigma)?;
        let state_mask = if self.nu_reduced >= 64 {
            u64::MAX
        } else {
            (1u64 << self.nu_reduced) - 1
        };
        if self.ambiguity.iter().any(|b| b & state_mask != 0) {
            return Err(Error::IndeterminateState(bits::fmt_tuple(sigma, self.nu)));
        }
        Ok(self.split(base).reduced_state)
    }

    /// The wrapped bits implied by `sigma`, marking the ones it leaves open.
    pub fn admissible_segments(&self, sigma: u32) -> Result<Vec<AdmissibleBit>> {
        let base = self.particular(sigma)?;
        let spread = self.ambiguity.iter().fold(0u64, |acc, &b| acc | b);
        let mut out: Vec<AdmissibleBit> = self
            .tail
            .iter()
            .enumerate()
            .map(|(t, &(column, section))| {
                let i = self.nu_reduced + t;
                let value = if (spread >> i) & 1 == 1 {
                    Forced::Free
                } else {
                    Forced::Bit((base >> i) & 1 == 1)
                };
                AdmissibleBit {
                    column,
                    section,
                    value,
                }
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// `sigma -> sigma~` for every original state, when determinate.
    /// Unreachable states are absent.
    pub fn table(&self) -> Result<BTreeMap<u32, u32>> {
        let mut out = BTreeMap::new();
        for s in 0..(1u64 << self.nu) {
            match self.map_state(s as u32) {
                Ok(t) => {
                    out.insert(s as u32, t);
                }
                Err(Error::ContradictoryState(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Width of the error symbols.
    pub fn label_width(&self) -> usize {
        self.n
    }
}

/// Reduced state at time `N` for original state `sigma` under a forward plan.
pub fn map_state(sigma: u32, plan: &ShiftPlan) -> Result<u32> {
    StateEmbedding::new(plan)?.map_state(sigma)
}

/// Wrapped error bits forced by original state `sigma` under a forward plan.
pub fn admissible_segments(sigma: u32, plan: &ShiftPlan) -> Result<Vec<AdmissibleBit>> {
    StateEmbedding::new(plan)?.admissible_segments(sigma)
}
