//! Circular tail-biting trellises: construction, subtrellises and path enumeration.

mod export;

use std::collections::BTreeSet;

pub use export::{export_dot, ExportOptions, Highlight};

use crate::bits;
use crate::convcode::{dual_state_of, Encoder, EncoderState, SymbolSequence};
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;
use crate::synformer::{SyndromeFormer, SyndromeFormerState};

/// Largest `log2` of the number of paths [`enumerate_paths`] will produce.
pub const PATH_BUDGET_BITS: u32 = 20;

/// Largest `nu + n` for which sections are built by exhaustive branch search.
pub const SECTION_BUDGET_BITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrellisKind {
    Code,
    Error,
}

/// A labeled edge of one trellis section. States are compacted labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Branch {
    pub from: u32,
    pub label: u32,
    pub to: u32,
}

/// An `N`-section trellis stored circularly: the state set at time `N` is
/// the state set at time 0. Every section carries the full `2^nu` state set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailBitingTrellis {
    kind: TrellisKind,
    state_bits: usize,
    label_width: usize,
    sections: Vec<Vec<Branch>>,
    syndrome: Option<SymbolSequence>,
    sigma_fin: Option<SyndromeFormerState>,
}

impl TailBitingTrellis {
    pub fn kind(&self) -> TrellisKind {
        self.kind
    }

    /// Number of sections `N`.
    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn state_bits(&self) -> usize {
        self.state_bits
    }

    pub fn num_states(&self) -> u32 {
        1 << self.state_bits
    }

    pub fn label_width(&self) -> usize {
        self.label_width
    }

    /// States at time `k`, `0 <= k <= N`.
    pub fn states(&self, k: usize) -> std::ops::Range<u32> {
        assert!(k <= self.len());
        0..self.num_states()
    }

    /// Branches of section `k`, `1 <= k <= N`, sorted.
    pub fn branches(&self, k: usize) -> &[Branch] {
        &self.sections[k - 1]
    }

    /// Syndromes the error trellis was built from.
    pub fn syndrome(&self) -> Option<&SymbolSequence> {
        self.syndrome.as_ref()
    }

    pub fn sigma_fin(&self) -> Option<&SyndromeFormerState> {
        self.sigma_fin.as_ref()
    }

    pub fn format_state(&self, s: u32) -> String {
        bits::fmt_tuple(s, self.state_bits)
    }

    pub fn parse_state(&self, text: &str) -> Result<u32> {
        let (value, width) = bits::parse_tuple(text)?;
        if width != self.state_bits {
            return Err(Error::UnknownState(text.trim().to_string()));
        }
        Ok(value)
    }

    fn check_state(&self, s: u32) -> Result<()> {
        if s >= self.num_states() {
            return Err(Error::UnknownState(format!("{s}")));
        }
        Ok(())
    }

    /// Outgoing `(label, to)` pairs per state, per section.
    fn adjacency(&self) -> Vec<Vec<Vec<(u32, u32)>>> {
        self.sections
            .iter()
            .map(|sec| {
                let mut adj = vec![Vec::new(); self.num_states() as usize];
                for b in sec {
                    adj[b.from as usize].push((b.label, b.to));
                }
                adj
            })
            .collect()
    }

    /// All tail-biting paths starting and ending in `start` whose label at
    /// section `k` satisfies `allow(k, label)`.
    pub fn paths_from<F>(&self, start: u32, allow: F) -> Result<Vec<TrellisPath>>
    where
        F: Fn(usize, u32) -> bool,
    {
        self.check_state(start)?;
        let adj = self.adjacency();
        let mut out = Vec::new();
        let mut labels = Vec::with_capacity(self.len());
        let mut states = vec![start];
        self.walk(&adj, start, &allow, &mut labels, &mut states, &mut out, 0)?;
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk<F>(
        &self,
        adj: &[Vec<Vec<(u32, u32)>>],
        start: u32,
        allow: &F,
        labels: &mut Vec<u32>,
        states: &mut Vec<u32>,
        out: &mut Vec<TrellisPath>,
        already: usize,
    ) -> Result<()>
    where
        F: Fn(usize, u32) -> bool,
    {
        let k = labels.len();
        if k == self.len() {
            if *states.last().expect("nonempty") == start {
                if already + out.len() >= 1 << PATH_BUDGET_BITS {
                    return Err(Error::BudgetExceeded {
                        required_bits: PATH_BUDGET_BITS + 1,
                        budget_bits: PATH_BUDGET_BITS,
                    });
                }
                out.push(TrellisPath {
                    start,
                    labels: SymbolSequence::new(self.label_width, labels.clone())?,
                    states: states.clone(),
                });
            }
            return Ok(());
        }
        let here = *states.last().expect("nonempty");
        for &(label, to) in &adj[k][here as usize] {
            if !allow(k + 1, label) {
                continue;
            }
            labels.push(label);
            states.push(to);
            self.walk(adj, start, allow, labels, states, out, already)?;
            labels.pop();
            states.pop();
        }
        Ok(())
    }
}

/// A path through the trellis: `states[k]` is the state at time `k`,
/// `labels` the branch labels of sections `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrellisPath {
    pub start: u32,
    pub labels: SymbolSequence,
    pub states: Vec<u32>,
}

impl TrellisPath {
    pub fn is_tailbiting(&self) -> bool {
        self.states.first() == self.states.last()
    }
}

/// Error trellis for received word `z` under syndrome former `H^T(D)`.
///
/// Section `k` holds every `(sigma, e, sigma')` with
/// `zeta_k = sigma^{(1)} + e H_0^T` and `sigma'` the next state, over the
/// full state space.
pub fn build_error_trellis(h: &PolyMatrix, z: &SymbolSequence) -> Result<TailBitingTrellis> {
    let former = SyndromeFormer::new(h)?;
    let tb = former.tailbiting_syndrome(z)?;
    let nu = former.state_bits();
    let n = former.cols();
    if nu + n > SECTION_BUDGET_BITS {
        return Err(Error::BudgetExceeded {
            required_bits: (nu + n) as u32,
            budget_bits: SECTION_BUDGET_BITS as u32,
        });
    }
    // Every section uses the same transitions; only the syndrome filter differs.
    let mut transitions: Vec<(u32, u32, u32, u32)> = Vec::with_capacity(1 << (nu + n));
    for s in 0..(1u32 << nu) {
        let sigma = former.state_from_compact(s)?;
        for e in 0..(1u32 << n) {
            let (next, zeta) = former.step(&sigma, e);
            transitions.push((zeta, s, e, next.compact()));
        }
    }
    let sections = tb
        .syndrome
        .symbols()
        .iter()
        .map(|&zk| {
            let mut sec: Vec<Branch> = transitions
                .iter()
                .filter(|t| t.0 == zk)
                .map(|&(_, from, label, to)| Branch { from, label, to })
                .collect();
            sec.sort();
            sec
        })
        .collect();
    Ok(TailBitingTrellis {
        kind: TrellisKind::Error,
        state_bits: nu,
        label_width: n,
        sections,
        syndrome: Some(tb.syndrome),
        sigma_fin: Some(tb.sigma_fin),
    })
}

/// Code trellis of `G(D)` with `n_sections` sections, driven by every input symbol.
pub fn build_code_trellis(g: &PolyMatrix, n_sections: usize) -> Result<TailBitingTrellis> {
    let encoder = Encoder::new(g)?;
    let required = encoder.memory().max(1);
    if n_sections < required {
        return Err(Error::LengthTooShort {
            length: n_sections,
            required,
        });
    }
    let nu = encoder.state_bits();
    let k0 = encoder.inputs();
    if nu + k0 > SECTION_BUDGET_BITS {
        return Err(Error::BudgetExceeded {
            required_bits: (nu + k0) as u32,
            budget_bits: SECTION_BUDGET_BITS as u32,
        });
    }
    let mut section = Vec::with_capacity(1 << (nu + k0));
    for s in 0..(1u32 << nu) {
        for u in 0..(1u32 << k0) {
            let (to, label) = encoder.step(s, u);
            section.push(Branch { from: s, label, to });
        }
    }
    section.sort();
    Ok(TailBitingTrellis {
        kind: TrellisKind::Code,
        state_bits: nu,
        label_width: encoder.outputs(),
        sections: vec![section; n_sections],
        syndrome: None,
        sigma_fin: None,
    })
}

/// Every tail-biting path, sorted by start state then labels.
pub fn enumerate_paths(t: &TailBitingTrellis) -> Result<Vec<TrellisPath>> {
    let mut all = Vec::new();
    for s in t.states(0) {
        let mut paths = t.paths_from(s, |_, _| true)?;
        if all.len() + paths.len() > 1 << PATH_BUDGET_BITS {
            return Err(Error::BudgetExceeded {
                required_bits: PATH_BUDGET_BITS + 1,
                budget_bits: PATH_BUDGET_BITS,
            });
        }
        all.append(&mut paths);
    }
    Ok(all)
}

/// The subtrellis of paths with initial and final state `s`.
pub fn extract_subtrellis(t: &TailBitingTrellis, s: u32) -> Result<Vec<TrellisPath>> {
    t.paths_from(s, |_, _| true)
}

/// Label sequences of a set of paths.
pub fn labels_of(paths: &[TrellisPath]) -> BTreeSet<SymbolSequence> {
    paths.iter().map(|p| p.labels.clone()).collect()
}

/// Start state of the error subtrellis paired with the code subtrellis at
/// `beta`: `sigma_fin + beta*`.
pub fn error_subtrellis_state_for(
    beta: EncoderState,
    sigma_fin: &SyndromeFormerState,
    h: &PolyMatrix,
    g: &PolyMatrix,
) -> Result<SyndromeFormerState> {
    let star = dual_state_of(g, h, beta)?;
    sigma_fin.add(&star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::convcode::enumerate_tailbiting_codewords;

    fn seq(s: &str) -> SymbolSequence {
        s.parse().unwrap()
    }

    fn reference_trellis() -> TailBitingTrellis {
        build_error_trellis(&catalog::h1(), &catalog::z1()).unwrap()
    }

    #[test]
    fn error_trellis_shape() {
        let t = reference_trellis();
        assert_eq!(t.len(), 4);
        assert_eq!(t.num_states(), 4);
        assert_eq!(t.syndrome().unwrap().to_string(), "00 10 01 10");
        assert_eq!(t.sigma_fin().unwrap().to_string(), "(1,1)");
        for k in 1..=4 {
            // 2^{n-m} branches leave every state
            assert_eq!(t.branches(k).len(), 8);
            for s in t.states(k - 1) {
                assert_eq!(t.branches(k).iter().filter(|b| b.from == s).count(), 2);
            }
        }
    }

    #[test]
    fn branches_satisfy_syndrome_equation() {
        let h = catalog::h1();
        let sf = SyndromeFormer::new(&h).unwrap();
        let t = reference_trellis();
        for k in 1..=t.len() {
            for b in t.branches(k) {
                let sigma = sf.state_from_compact(b.from).unwrap();
                let (next, zeta) = sf.step(&sigma, b.label);
                assert_eq!(zeta, t.syndrome().unwrap().get(k));
                assert_eq!(next.compact(), b.to);
            }
        }
    }

    #[test]
    fn reference_subtrellis() {
        let t = reference_trellis();
        let s = t.parse_state("(1,0)").unwrap();
        let paths = extract_subtrellis(&t, s).unwrap();
        let got: Vec<String> = paths.iter().map(|p| p.labels.to_string()).collect();
        assert_eq!(
            got,
            vec![
                "100 110 010 111",
                "100 111 111 001",
                "101 010 001 001",
                "101 011 100 111",
            ]
        );
        assert!(paths.iter().all(TrellisPath::is_tailbiting));
        assert!(extract_subtrellis(&t, 4).is_err());
    }

    #[test]
    fn sixteen_tailbiting_error_paths() {
        let t = reference_trellis();
        let paths = enumerate_paths(&t).unwrap();
        assert_eq!(paths.len(), 16);
        for s in t.states(0) {
            assert_eq!(paths.iter().filter(|p| p.start == s).count(), 4);
        }
        // e = z + codeword
        let expected: BTreeSet<SymbolSequence> =
            enumerate_tailbiting_codewords(&catalog::g1(), 4)
                .unwrap()
                .iter()
                .map(|c| catalog::z1().xor(&c.code).unwrap())
                .collect();
        assert_eq!(labels_of(&paths), expected);
    }

    #[test]
    fn reduced_error_trellis_has_two_states() {
        let t = build_error_trellis(&catalog::h1_reduced(), &seq("111 100 101 011")).unwrap();
        assert_eq!(t.num_states(), 2);
        // One path per coset member, as in the original trellis.
        assert_eq!(enumerate_paths(&t).unwrap().len(), 16);
    }

    #[test]
    fn codeword_input_contains_zero_path() {
        let y = seq("010 011 111 100");
        let t = build_error_trellis(&catalog::h1(), &y).unwrap();
        assert!(t.syndrome().unwrap().is_zero());
        let paths = extract_subtrellis(&t, 0).unwrap();
        assert!(paths.iter().any(|p| p.labels.is_zero()));
    }

    #[test]
    fn code_trellis_of_g1() {
        let t = build_code_trellis(&catalog::g1(), 4).unwrap();
        assert_eq!(t.kind(), TrellisKind::Code);
        assert_eq!(t.num_states(), 4);
        let s = t.parse_state("(1,1)").unwrap();
        let paths = extract_subtrellis(&t, s).unwrap();
        assert_eq!(paths.len(), 4);
        let expected: BTreeSet<SymbolSequence> = enumerate_tailbiting_codewords(&catalog::g1(), 4)
            .unwrap()
            .into_iter()
            .filter(|c| c.start.bits == 0b11)
            .map(|c| c.code)
            .collect();
        assert_eq!(labels_of(&paths), expected);
        assert_eq!(enumerate_paths(&t).unwrap().len(), 16);

        let reduced = build_code_trellis(&catalog::g1_reduced(), 4).unwrap();
        assert_eq!(reduced.num_states(), 2);
        assert!(build_code_trellis(&catalog::g1(), 1).is_err());
    }

    #[test]
    fn memoryless_generator_gives_single_state() {
        let g = PolyMatrix::from_exponents(&[&[&[0], &[0]]]).unwrap();
        let t = build_code_trellis(&g, 1).unwrap();
        assert_eq!(t.num_states(), 1);
        let paths = enumerate_paths(&t).unwrap();
        assert_eq!(labels_of(&paths), [seq("00"), seq("11")].into_iter().collect());
    }

    #[test]
    fn code_and_error_subtrellises_pair_up() {
        let (g, h) = (catalog::g1(), catalog::h1());
        let sigma_fin = *reference_trellis().sigma_fin().unwrap();
        let beta = EncoderState { bits: 0b11, width: 2 };
        let s = error_subtrellis_state_for(beta, &sigma_fin, &h, &g).unwrap();
        assert_eq!(s.to_string(), "(1,0)");
        let zero = EncoderState { bits: 0, width: 2 };
        assert_eq!(error_subtrellis_state_for(zero, &sigma_fin, &h, &g).unwrap(), sigma_fin);
        let images: BTreeSet<u32> = (0..4)
            .map(|b| {
                error_subtrellis_state_for(EncoderState { bits: b, width: 2 }, &sigma_fin, &h, &g)
                    .unwrap()
                    .compact()
            })
            .collect();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn rotating_input_rotates_sections() {
        let t = reference_trellis();
        for r in 1..4 {
            let rotated = build_error_trellis(&catalog::h1(), &catalog::z1().rotate(r)).unwrap();
            for k in 1..=4usize {
                let src = (k as i64 - 1 - r).rem_euclid(4) as usize + 1;
                assert_eq!(rotated.branches(k), t.branches(src));
            }
        }
    }
}
