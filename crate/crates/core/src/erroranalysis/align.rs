use serde::{Deserialize, Serialize};

/// One step of a Levenshtein alignment. `r` indexes the reference, `h` the
/// hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlignOp {
    Match { r: usize, h: usize },
    Substitute { r: usize, h: usize },
    Delete { r: usize },
    Insert { h: usize },
}

impl AlignOp {
    pub fn is_error(&self) -> bool {
        !matches!(self, AlignOp::Match { .. })
    }
}

/// Minimal unit-cost alignment, ordered left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WerAlignment {
    pub ops: Vec<AlignOp>,
}

impl WerAlignment {
    pub fn edit_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_error()).count()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let (mut sub, mut del, mut ins) = (0, 0, 0);
        for op in &self.ops {
            match op {
                AlignOp::Substitute { .. } => sub += 1,
                AlignOp::Delete { .. } => del += 1,
                AlignOp::Insert { .. } => ins += 1,
                AlignOp::Match { .. } => {}
            }
        }
        (sub, del, ins)
    }
}

/// Levenshtein alignment of `hyp` against `reference`.
///
/// The backtrace walks from the end of both sequences and at each cell takes
/// the first optimal move in the order match, substitute, delete, insert, so
/// the returned trace is unique.
pub fn wer_align<S: AsRef<str>>(reference: &[S], hyp: &[S]) -> WerAlignment {
    let (n, m) = (reference.len(), hyp.len());
    let w = m + 1;
    let mut d = vec![0u32; (n + 1) * w];
    for (j, cell) in d[..w].iter_mut().enumerate() {
        *cell = j as u32;
    }
    for i in 1..=n {
        d[i * w] = i as u32;
        let r = reference[i - 1].as_ref();
        for j in 1..=m {
            let diag = d[(i - 1) * w + j - 1] + u32::from(r != hyp[j - 1].as_ref());
            let up = d[(i - 1) * w + j] + 1;
            let left = d[i * w + j - 1] + 1;
            d[i * w + j] = diag.min(up).min(left);
        }
    }

    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let cur = d[i * w + j];
        if i > 0 && j > 0 {
            let diag = d[(i - 1) * w + j - 1];
            let same = reference[i - 1].as_ref() == hyp[j - 1].as_ref();
            if same && cur == diag {
                ops.push(AlignOp::Match { r: i - 1, h: j - 1 });
                i -= 1;
                j -= 1;
                continue;
            }
            if !same && cur == diag + 1 {
                ops.push(AlignOp::Substitute { r: i - 1, h: j - 1 });
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && cur == d[(i - 1) * w + j] + 1 {
            ops.push(AlignOp::Delete { r: i - 1 });
            i -= 1;
        } else {
            ops.push(AlignOp::Insert { h: j - 1 });
            j -= 1;
        }
    }
    ops.reverse();
    WerAlignment { ops }
}

/// Unit-cost Levenshtein distance, two-row.
pub fn edit_distance<S: AsRef<str>, T: AsRef<str>>(a: &[S], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x.as_ref() != y.as_ref());
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
