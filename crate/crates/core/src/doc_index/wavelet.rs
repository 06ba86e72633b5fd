//! Wavelet matrix answering "how many values in a range are below x".

#[derive(Debug, Clone, PartialEq, Eq)]
struct RankBits {
    words: Vec<u64>,
    // ones before each word
    before: Vec<u32>,
    len: usize,
}

impl RankBits {
    fn new(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut before = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u32;
        for w in &words {
            before.push(acc);
            acc += w.count_ones();
        }
        before.push(acc);
        RankBits {
            words,
            before,
            len: bits.len(),
        }
    }

    /// Zeros in `[0, i)`.
    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let (w, b) = (i / 64, i % 64);
        let mut r = self.before[w] as usize;
        if b > 0 {
            r += (self.words[w] & ((1u64 << b) - 1)).count_ones() as usize;
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletMatrix {
    levels: Vec<(RankBits, usize)>,
    len: usize,
}

impl WaveletMatrix {
    pub fn new(values: &[usize]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        let height = (usize::BITS - max.leading_zeros()) as usize;
        let mut cur = values.to_vec();
        let mut levels = Vec::with_capacity(height);
        for level in (0..height).rev() {
            let bits: Vec<bool> = cur.iter().map(|&v| v >> level & 1 == 1).collect();
            let (zeros, ones): (Vec<usize>, Vec<usize>) =
                cur.iter().partition(|&&v| v >> level & 1 == 0);
            let z = zeros.len();
            cur = zeros;
            cur.extend(ones);
            levels.push((RankBits::new(&bits), z));
        }
        WaveletMatrix {
            levels,
            len: values.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of values `< x` among positions `[lo, hi)` (0-based).
    pub fn count_less(&self, mut lo: usize, mut hi: usize, x: usize) -> usize {
        let height = self.levels.len();
        if height < usize::BITS as usize && x >> height != 0 {
            return hi - lo;
        }
        let mut count = 0;
        for (k, (bits, zeros)) in self.levels.iter().enumerate() {
            let level = height - 1 - k;
            let (lo0, hi0) = (bits.rank0(lo), bits.rank0(hi));
            if x >> level & 1 == 1 {
                count += hi0 - lo0;
                lo = zeros + (lo - lo0);
                hi = zeros + (hi - hi0);
            } else {
                lo = lo0;
                hi = hi0;
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_scan(values in proptest::collection::vec(0usize..70, 0..200), x in 0usize..80) {
            let wm = WaveletMatrix::new(&values);
            for lo in 0..=values.len() {
                for hi in lo..=values.len() {
                    let want = values[lo..hi].iter().filter(|&&v| v < x).count();
                    prop_assert_eq!(wm.count_less(lo, hi, x), want);
                }
            }
        }
    }

    #[test]
    fn all_zero_values() {
        let wm = WaveletMatrix::new(&[0, 0, 0]);
        assert_eq!(wm.count_less(0, 3, 0), 0);
        assert_eq!(wm.count_less(0, 3, 1), 3);
    }
}
