use std::fmt;

/// Dense bit matrix over GF(2), at most 64 columns. Bit `j` of a row word is column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= 64, "at most 64 columns supported");
        BitMatrix {
            rows,
            cols,
            data: vec![0; rows],
        }
    }

    /// Builds from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.data[i] |= 1 << j;
        } else {
            self.data[i] &= !(1 << j);
        }
    }

    pub fn row_word(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.data)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Rank of a set of GF(2) row vectors.
pub fn rank_of(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Solution set of a GF(2) linear system: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: u64,
    pub kernel: Vec<u64>,
}

/// Solves `forms[i] · w = rhs_i` for `w` in `GF(2)^vars`, where `rhs_i` is bit
/// `i` of `rhs` and the dot product is the parity of `forms[i] & w`.
///
/// Returns `None` when the system is inconsistent.
pub fn solve_affine(forms: &[u64], rhs: u64, vars: usize) -> Option<AffineSolution> {
    assert!(vars <= 64 && forms.len() <= 64);
    // Augmented rows: (form, rhs bit).
    let mut rows: Vec<(u64, bool)> = forms
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, (rhs >> i) & 1 == 1))
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let Some(p) = (r..rows.len()).find(|&i| (rows[i].0 >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        let (pf, pb) = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && (row.0 >> col) & 1 == 1 {
                row.0 ^= pf;
                row.1 ^= pb;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|&(f, b)| f == 0 && b) {
        return None;
    }
    let mut particular = 0u64;
    for (i, &col) in pivots.iter().enumerate() {
        if rows[i].1 {
            particular |= 1 << col;
        }
    }
    let mut kernel = Vec::new();
    for free in (0..vars).filter(|c| !pivots.contains(c)) {
        let mut v = 1u64 << free;
        for (i, &col) in pivots.iter().enumerate() {
            if (rows[i].0 >> free) & 1 == 1 {
                v |= 1 << col;
            }
        }
        kernel.push(v);
    }
    Some(AffineSolution { particular, kernel })
}

/// Parity of `a & b`.
pub fn dot(a: u64, b: u64) -> bool {
    (a & b).count_ones() % 2 == 1
}
