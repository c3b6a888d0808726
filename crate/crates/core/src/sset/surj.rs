//! Monotone maps between ordinals `[m] = {0 < ... < m}`, stored as value lists.

/// All monotone maps `[m] -> [n]` in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

/// All monotone surjections `[m] -> [k]`.
pub fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return vec![];
    }
    monotone_maps(m, k)
        .into_iter()
        .filter(|e| is_surjective(e, k))
        .collect()
}

pub fn is_surjective(e: &[usize], k: usize) -> bool {
    e.first() == Some(&0) && e.last() == Some(&k) && e.windows(2).all(|w| w[1] <= w[0] + 1)
}

/// The degeneracy word `[j_1 > ... > j_k]` with `e^* y = s_{j_1} ... s_{j_k} y`.
pub fn to_word(e: &[usize]) -> Vec<usize> {
    (0..e.len().saturating_sub(1))
        .rev()
        .filter(|&j| e[j] == e[j + 1])
        .collect()
}

/// Inverse of [`to_word`] given the base degree.
pub fn from_word(word: &[usize], base_degree: usize) -> Vec<usize> {
    let mut e: Vec<usize> = (0..=base_degree).collect();
    for &j in word.iter().rev() {
        e.insert(j, e[j]);
    }
    e
}

/// `outer ∘ inner`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&t| outer[t]).collect()
}

/// The coface `d^i: [n-1] -> [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// The codegeneracy `s^i: [n+1] -> [n]` repeating `i`.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1)
        .map(|t| if t <= i { t } else { t - 1 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_monotone_maps() {
        // Monotone maps [m] -> [n] number C(m+n+1, m+1).
        assert_eq!(monotone_maps(2, 2).len(), 10);
        assert_eq!(monotone_maps(1, 1).len(), 3);
        assert_eq!(surjections(3, 1).len(), 3);
    }

    #[test]
    fn words_roundtrip() {
        for m in 0..5 {
            for k in 0..=m {
                for e in surjections(m, k) {
                    assert_eq!(from_word(&to_word(&e), k), e);
                }
            }
        }
        assert_eq!(to_word(&[0, 0, 0]), vec![1, 0]);
    }
}
