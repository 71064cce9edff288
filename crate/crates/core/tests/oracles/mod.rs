//! Reference computations kept independent of the library code paths.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

/// Full-matrix Levenshtein distance.
pub fn textbook_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = if a[i - 1] == b[j - 1] { 0 } else { 1 };
            d[i][j] = (d[i - 1][j - 1] + cost).min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// All arrangements reachable from `hyp` by block moves, with the fewest
/// moves needed for each.
pub fn shift_closure(hyp: &[String]) -> HashMap<Vec<String>, usize> {
    let mut seen = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(hyp.to_vec(), 0);
    queue.push_back(hyp.to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = seen[&cur];
        let n = cur.len();
        for start in 0..n {
            for len in 1..=n - start {
                let block = &cur[start..start + len];
                let rest: Vec<String> = cur[..start].iter().chain(&cur[start + len..]).cloned().collect();
                for pos in 0..=rest.len() {
                    let mut next = rest[..pos].to_vec();
                    next.extend_from_slice(block);
                    next.extend_from_slice(&rest[pos..]);
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), d + 1);
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

/// Fewest shifts plus word edits turning `hyp` into `reference`.
pub fn min_shift_edit(closure: &HashMap<Vec<String>, usize>, reference: &[String]) -> usize {
    closure
        .iter()
        .map(|(arr, shifts)| shifts + textbook_distance(arr, reference))
        .min()
        .unwrap()
}

fn ngrams<T: Clone>(xs: &[T], n: usize) -> Vec<Vec<T>> {
    if xs.len() < n {
        return Vec::new();
    }
    (0..=xs.len() - n).map(|i| xs[i..i + n].to_vec()).collect()
}

/// Clipped matches by repeatedly removing matched items from a pool.
fn clipped_matches<T: PartialEq + Clone>(hyp: &[Vec<T>], reference: &[Vec<T>]) -> usize {
    let mut pool = reference.to_vec();
    let mut m = 0;
    for g in hyp {
        if let Some(pos) = pool.iter().position(|x| x == g) {
            pool.remove(pos);
            m += 1;
        }
    }
    m
}

/// Corpus BLEU straight from the formula.
pub fn bleu_formula(hyps: &[Vec<String>], refs: &[Vec<String>]) -> f64 {
    let mut log_sum = 0.0;
    for n in 1..=4 {
        let (mut m, mut t) = (0usize, 0usize);
        for (h, r) in hyps.iter().zip(refs) {
            let hg = ngrams(h, n);
            m += clipped_matches(&hg, &ngrams(r, n));
            t += hg.len();
        }
        if m == 0 || t == 0 {
            return 0.0;
        }
        log_sum += (m as f64 / t as f64).ln();
    }
    let c: usize = hyps.iter().map(Vec::len).sum();
    let r: usize = refs.iter().map(Vec::len).sum();
    let bp = if c < r { (1.0 - r as f64 / c as f64).exp() } else { 1.0 };
    100.0 * bp * (log_sum / 4.0).exp()
}

/// Character n-gram F-score by direct enumeration.
pub fn chrf_enumeration(hyps: &[Vec<String>], refs: &[Vec<String>], beta: f64, max_n: usize) -> f64 {
    let chars = |s: &Vec<String>| -> Vec<char> { s.concat().chars().filter(|c| !c.is_whitespace()).collect() };
    let (mut sp, mut sr, mut orders) = (0.0, 0.0, 0);
    for n in 1..=max_n {
        let (mut m, mut th, mut tr) = (0usize, 0usize, 0usize);
        for (h, r) in hyps.iter().zip(refs) {
            let hg = ngrams(&chars(h), n);
            let rg = ngrams(&chars(r), n);
            m += clipped_matches(&hg, &rg);
            th += hg.len();
            tr += rg.len();
        }
        if th == 0 && tr == 0 {
            continue;
        }
        orders += 1;
        if th > 0 {
            sp += m as f64 / th as f64;
        }
        if tr > 0 {
            sr += m as f64 / tr as f64;
        }
    }
    if orders == 0 {
        return 0.0;
    }
    let (p, r) = (sp / orders as f64, sr / orders as f64);
    let b2 = beta * beta;
    if b2 * p + r == 0.0 {
        0.0
    } else {
        100.0 * (1.0 + b2) * p * r / (b2 * p + r)
    }
}

/// METEOR score from alignment counts with the standard parameters.
pub fn meteor_formula(matches: f64, hyp_len: f64, ref_len: f64, chunks: f64) -> f64 {
    if matches == 0.0 {
        return 0.0;
    }
    let p = matches / hyp_len;
    let r = matches / ref_len;
    let f = p * r / (0.9 * p + 0.1 * r);
    100.0 * f * (1.0 - 0.5 * (chunks / matches).powi(3))
}

pub fn toks(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}
