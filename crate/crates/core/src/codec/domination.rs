use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{Codeword, Label};

/// Largest target length accepted by [`dominates_bruteforce`].
pub const DOMINATION_BRUTEFORCE_LIMIT: usize = 14;

/// A strictly increasing map `f : [n] -> [n']`, stored 1-based:
/// `f[j - 1] = f(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub f: Vec<usize>,
}

impl Embedding {
    pub fn at(&self, j: usize) -> usize {
        self.f[j - 1]
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}

fn same_bound(a: &Codeword, b: &Codeword) -> Result<()> {
    if a.c != b.c {
        return Err(Error::MismatchedBound {
            left: a.c,
            right: b.c,
        });
    }
    Ok(())
}

/// Interns the labels of both words so that label equality is an integer
/// comparison.
fn label_ids<'a>(a: &'a Codeword, b: &'a Codeword) -> (Vec<usize>, Vec<usize>) {
    let mut ids: HashMap<&'a Label, usize> = HashMap::new();
    let mut id = |l: &'a Label| {
        let next = ids.len();
        *ids.entry(l).or_insert(next)
    };
    let la = a.labels.iter().map(&mut id).collect();
    let lb = b.labels.iter().map(&mut id).collect();
    (la, lb)
}

/// Checks that `f` witnesses `a ≤ b`: it is strictly increasing, preserves
/// labels, and every gap of `b` spanned by a gap `j` of `a` is at least
/// `ζ_a(j)`.
pub fn check_embedding(a: &Codeword, b: &Codeword, f: &Embedding) -> bool {
    if a.c != b.c || f.len() != a.n {
        return false;
    }
    if f.f.iter().any(|&x| x == 0 || x > b.n) || f.f.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if (1..=a.n).any(|j| a.label(j) != b.label(f.at(j))) {
        return false;
    }
    (1..a.n).all(|j| (f.at(j)..f.at(j + 1)).all(|i| b.zeta(i) >= a.zeta(j)))
}

/// Decides `a ≤ b` and returns the lexicographically smallest witness.
///
/// `ok[j][i]` records whether positions `j..=n` of `a` embed into `b` with
/// `j` sent to `i`. It is filled backwards; the witness is then read off
/// forwards by always taking the smallest feasible image.
pub fn dominates(a: &Codeword, b: &Codeword) -> Result<Option<Embedding>> {
    same_bound(a, b)?;
    let (n, m) = (a.n, b.n);
    if n == 0 || n > m {
        return Ok(None);
    }
    let (la, lb) = label_ids(a, b);
    // Index both words from 1 so the recurrences read like their definitions.
    let zeta_b = |i: usize| b.zeta[i - 1];

    // Smallest feasible successor image i' > i for position j + 1, if any.
    let next_image = |ok_next: &[bool], i: usize, need: usize| -> Option<usize> {
        let mut low = usize::MAX;
        for (ip, &feasible) in ok_next.iter().enumerate().take(m + 1).skip(i + 1) {
            low = low.min(zeta_b(ip - 1));
            if low < need {
                return None;
            }
            if feasible {
                return Some(ip);
            }
        }
        None
    };

    let mut ok = vec![vec![false; m + 1]; n + 1];
    for i in 1..=m {
        ok[n][i] = la[n - 1] == lb[i - 1];
    }
    for j in (1..n).rev() {
        let need = a.zeta[j - 1];
        let (head, tail) = ok.split_at_mut(j + 1);
        let (row, next) = (&mut head[j], &tail[0]);
        for i in 1..=m {
            row[i] = la[j - 1] == lb[i - 1] && next_image(next, i, need).is_some();
        }
    }

    let Some(first) = (1..=m).find(|&i| ok[1][i]) else {
        return Ok(None);
    };
    let mut f = vec![first];
    for j in 1..n {
        let i = f[j - 1];
        let ip = next_image(&ok[j + 1], i, a.zeta[j - 1])
            .expect("feasibility table guarantees a successor");
        f.push(ip);
    }
    let emb = Embedding { f };
    debug_assert!(check_embedding(a, b, &emb));
    Ok(Some(emb))
}

/// Tries every strictly increasing map in lexicographic order.
pub fn dominates_bruteforce(a: &Codeword, b: &Codeword) -> Result<Option<Embedding>> {
    same_bound(a, b)?;
    if b.n > DOMINATION_BRUTEFORCE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "brute-force domination",
            n: b.n,
            limit: DOMINATION_BRUTEFORCE_LIMIT,
        });
    }
    if a.n == 0 || a.n > b.n {
        return Ok(None);
    }
    let mut f: Vec<usize> = (1..=a.n).collect();
    loop {
        let emb = Embedding { f: f.clone() };
        if check_embedding(a, b, &emb) {
            return Ok(Some(emb));
        }
        // advance to the next combination
        let k = a.n;
        let Some(p) = (0..k).rev().find(|&p| f[p] < b.n - (k - 1 - p)) else {
            return Ok(None);
        };
        f[p] += 1;
        for q in p + 1..k {
            f[q] = f[q - 1] + 1;
        }
    }
}
