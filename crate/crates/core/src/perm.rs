//! Small permutation utilities. Permutations are 1-based words `w(1)..w(n)`.

/// Advance to the next permutation in lexicographic order; `false` at the last one.
pub fn next_permutation(w: &mut [usize]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            cur = Some(next);
        }
        Some(out)
    })
}

/// Positions `i` (1-based) with `w(i) > w(i+1)`.
pub fn descent_set(w: &[usize]) -> Vec<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

pub fn des(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Whether `w` is a permutation of `1..=n`.
pub fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len() + 1];
    w.iter().all(|&a| a >= 1 && a <= w.len() && !std::mem::replace(&mut seen[a], true))
}

/// Lexicographic rank in `S_n`, 0-based.
pub fn rank(w: &[usize]) -> usize {
    let n = w.len();
    let mut fact = vec![1usize; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i;
    }
    let mut used = 0u64;
    let mut r = 0;
    for (i, &a) in w.iter().enumerate() {
        let smaller = (1..a).filter(|&b| used >> b & 1 == 0).count();
        r += smaller * fact[n - 1 - i];
        used |= 1 << a;
    }
    r
}
