//! Induced-sorting suffix array construction over integer alphabets.

const EMPTY: usize = usize::MAX;

/// Suffix array of `s`, which must end with a unique smallest symbol `0`.
/// Every symbol must be `< alphabet`.
pub(crate) fn suffix_array(s: &[usize], alphabet: usize) -> Vec<usize> {
    debug_assert!(!s.is_empty());
    debug_assert_eq!(s[s.len() - 1], 0);
    debug_assert!(s[..s.len() - 1].iter().all(|&c| c > 0 && c < alphabet));
    sais(s, alphabet)
}

fn bucket_bounds(s: &[usize], alphabet: usize, tails: bool) -> Vec<usize> {
    let mut counts = vec![0usize; alphabet];
    for &c in s {
        counts[c] += 1;
    }
    let mut sum = 0;
    for c in counts.iter_mut() {
        sum += *c;
        *c = if tails { sum } else { sum - *c };
    }
    counts
}

fn sais(s: &[usize], alphabet: usize) -> Vec<usize> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }

    // true = S-type
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut sa = vec![EMPTY; n];
    let mut tails = bucket_bounds(s, alphabet, true);
    for i in 1..n {
        if is_lms(i) {
            tails[s[i]] -= 1;
            sa[tails[s[i]]] = i;
        }
    }
    induce(s, alphabet, &stype, &mut sa);

    // Name LMS substrings in sorted order.
    let lms_sorted: Vec<usize> = sa.iter().copied().filter(|&p| is_lms(p)).collect();
    let mut names = vec![EMPTY; n / 2 + 1];
    let mut name = 0usize;
    let mut prev: Option<usize> = None;
    for &p in &lms_sorted {
        if let Some(q) = prev {
            if !lms_equal(s, &stype, q, p) {
                name += 1;
            }
        }
        names[p / 2] = name;
        prev = Some(p);
    }
    let distinct = name + 1;

    let lms_positions: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    let sorted_lms: Vec<usize> = if distinct < lms_positions.len() {
        let reduced: Vec<usize> = lms_positions.iter().map(|&p| names[p / 2]).collect();
        sais(&reduced, distinct)
            .into_iter()
            .map(|r| lms_positions[r])
            .collect()
    } else {
        lms_sorted
    };

    sa.fill(EMPTY);
    let mut tails = bucket_bounds(s, alphabet, true);
    for &p in sorted_lms.iter().rev() {
        tails[s[p]] -= 1;
        sa[tails[s[p]]] = p;
    }
    induce(s, alphabet, &stype, &mut sa);
    sa
}

fn induce(s: &[usize], alphabet: usize, stype: &[bool], sa: &mut [usize]) {
    let n = s.len();
    let mut heads = bucket_bounds(s, alphabet, false);
    for r in 0..n {
        let p = sa[r];
        if p != EMPTY && p > 0 && !stype[p - 1] {
            let c = s[p - 1];
            sa[heads[c]] = p - 1;
            heads[c] += 1;
        }
    }
    let mut tails = bucket_bounds(s, alphabet, true);
    for r in (0..n).rev() {
        let p = sa[r];
        if p != EMPTY && p > 0 && stype[p - 1] {
            let c = s[p - 1];
            tails[c] -= 1;
            sa[tails[c]] = p - 1;
        }
    }
}

fn lms_equal(s: &[usize], stype: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    if a == n - 1 || b == n - 1 {
        return false;
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    let mut d = 0;
    loop {
        if s[a + d] != s[b + d] || stype[a + d] != stype[b + d] {
            return false;
        }
        if d > 0 && (is_lms(a + d) || is_lms(b + d)) {
            return is_lms(a + d) && is_lms(b + d);
        }
        d += 1;
    }
}

/// Kasai et al.: `lcp[r]` is the common prefix length of the suffixes at
/// ranks `r - 1` and `r`, with `lcp[0] = 0`.
pub(crate) fn kasai(s: &[usize], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = rank[p];
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1];
        while p + h < n && q + h < n && s[p + h] == s[q + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}
