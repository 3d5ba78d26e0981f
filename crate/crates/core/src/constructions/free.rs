use std::collections::HashMap;

use super::word_name;
use crate::error::{LrbError, Result};
use crate::lrb::Lrb;

/// Free left regular band: injective words, multiplied by concatenating and
/// deleting repeated letters from the left.
pub fn free_lrb<S: AsRef<str>>(alphabet: &[S], cap: usize) -> Result<Lrb> {
    let n = alphabet.len();
    if n == 0 {
        return Err(LrbError::InvalidInput("empty alphabet".into()));
    }
    let mut distinct: Vec<&str> = alphabet.iter().map(|s| s.as_ref()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != n {
        return Err(LrbError::InvalidInput(
            "repeated letters in alphabet".into(),
        ));
    }
    // sum over k of n!/(n-k)!
    let mut total: usize = 1;
    let mut term: usize = 1;
    for k in 0..n {
        term = term.saturating_mul(n - k);
        total = total.saturating_add(term);
        if total > cap {
            return Err(LrbError::AlphabetTooLarge { letters: n, cap });
        }
    }
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut start = 0;
    while start < words.len() {
        let end = words.len();
        for i in start..end {
            for a in 0..n {
                if !words[i].contains(&a) {
                    let mut w = words[i].clone();
                    w.push(a);
                    words.push(w);
                }
            }
        }
        start = end;
    }
    debug_assert_eq!(words.len(), total);
    let index: HashMap<Vec<usize>, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let names = words
        .iter()
        .map(|w| word_name(&w.iter().map(|&a| alphabet[a].as_ref()).collect::<Vec<_>>()))
        .collect();
    Lrb::from_fn(
        words.len(),
        0,
        names,
        cap,
        "free left regular band",
        |x, y| {
            let mut w = words[x].clone();
            for &a in &words[y] {
                if !w.contains(&a) {
                    w.push(a);
                }
            }
            index[&w]
        },
    )
}
