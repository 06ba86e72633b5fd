//! Sparse-table range minimum queries.

use crate::error::Result;
use crate::suffix::GsaIndex;

/// O(1) range-minimum structure over a static array, in linear space.
///
/// The array is cut into blocks of `BLOCK` values. A sparse table over the
/// block minima answers the whole blocks of a query, and a small sparse table
/// inside each block, holding byte offsets, answers the partial blocks at
/// either end. Query bounds are 1-based and inclusive. Ties go to the
/// leftmost index. Values and the array length must fit in `u32`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rmq {
    values: Vec<u32>,
    // For block b, level k in 1..=LOG and offset i, the byte at
    // (b * LOG + k - 1) * BLOCK + i is the offset of the leftmost minimum of
    // the block's values[i..i + 2^k]. Windows running past the block end
    // are never read.
    local: Vec<u8>,
    // levels[k][b] = min key over blocks b..b + 2^k, where a value at index
    // t has key values[t] << 32 | t, so ties resolve to the smaller index
    levels: Vec<Vec<u64>>,
}

const LOG: usize = 4;
const BLOCK: usize = 1 << LOG;

impl Rmq {
    pub fn build(values: &[usize]) -> Self {
        assert!(u32::try_from(values.len()).is_ok(), "array too long for u32 indices");
        let values: Vec<u32> = values
            .iter()
            .map(|&v| u32::try_from(v).expect("value fits in u32"))
            .collect();
        let n = values.len();
        let blocks = n.div_ceil(BLOCK);

        let mut local = vec![0u8; blocks * LOG * BLOCK];
        for b in 0..blocks {
            let vals = &values[b * BLOCK..((b + 1) * BLOCK).min(n)];
            let row = |k: usize| (b * LOG + k - 1) * BLOCK;
            for k in 1..=LOG {
                let half = 1 << (k - 1);
                for i in 0..vals.len().saturating_sub(2 * half - 1) {
                    let (x, y) = if k == 1 {
                        (i, i + 1)
                    } else {
                        (local[row(k - 1) + i] as usize, local[row(k - 1) + i + half] as usize)
                    };
                    local[row(k) + i] = if vals[y] < vals[x] { y } else { x } as u8;
                }
            }
        }

        let mut rmq = Rmq {
            values,
            local,
            levels: Vec::new(),
        };
        let minima: Vec<u64> = (0..blocks)
            .map(|b| rmq.in_block(b * BLOCK, ((b + 1) * BLOCK).min(n) - 1))
            .collect();
        let mut levels = vec![minima];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = levels.last().unwrap();
            let next: Vec<u64> = (0..=blocks - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        rmq.levels = levels;
        rmq
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the leftmost minimum in `values[l..=r]` (1-based).
    pub fn query(&self, l: usize, r: usize) -> usize {
        (self.key(l - 1, r - 1) as u32) as usize + 1
    }

    /// Minimum value in `values[l..=r]` (1-based).
    pub fn min(&self, l: usize, r: usize) -> usize {
        (self.key(l - 1, r - 1) >> 32) as usize
    }

    fn key(&self, l: usize, r: usize) -> u64 {
        debug_assert!(l <= r && r < self.len());
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.in_block(l, r);
        }
        let mut best = self.in_block(l, (bl + 1) * BLOCK - 1).min(self.in_block(br * BLOCK, r));
        if bl + 1 < br {
            let (a, b) = (bl + 1, br - 1);
            let k = floor_log2(b - a + 1);
            let level = &self.levels[k];
            best = best.min(level[a]).min(level[b + 1 - (1 << k)]);
        }
        best
    }

    // Key of the leftmost minimum of values[l..=r], both in one block.
    fn in_block(&self, l: usize, r: usize) -> u64 {
        let base = l / BLOCK * BLOCK;
        let at = if l == r {
            l
        } else {
            let k = floor_log2(r - l + 1);
            let row = (l / BLOCK * LOG + k - 1) * BLOCK;
            let x = base + self.local[row + l - base] as usize;
            let y = base + self.local[row + r + 1 - (1 << k) - base] as usize;
            if self.values[y] < self.values[x] {
                y
            } else {
                x
            }
        };
        (self.values[at] as u64) << 32 | at as u64
    }
}

fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

/// Longest common prefix of the suffixes at global ranks `r1` and `r2`
/// (1-based). A suffix compared with itself yields its own length.
pub fn lcp_between(gsa: &GsaIndex, rmq: &Rmq, r1: usize, r2: usize) -> Result<usize> {
    gsa.check_rank(r1)?;
    gsa.check_rank(r2)?;
    Ok(lcp_unchecked(gsa, rmq, r1, r2))
}

pub(crate) fn lcp_unchecked(gsa: &GsaIndex, rmq: &Rmq, r1: usize, r2: usize) -> usize {
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    if lo == hi {
        gsa.suffix_len(lo)
    } else {
        rmq.min(lo + 1, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;
    use crate::error::Error;
    use proptest::prelude::*;

    fn scan(values: &[usize], l: usize, r: usize) -> usize {
        let mut best = l;
        for i in l..=r {
            if values[i - 1] < values[best - 1] {
                best = i;
            }
        }
        best
    }

    #[test]
    fn examples() {
        assert_eq!(Rmq::build(&[0, 2, 0, 1]).query(2, 4), 3);
        assert_eq!(Rmq::build(&[5]).query(1, 1), 1);
        assert_eq!(Rmq::build(&[3, 1, 1, 4]).query(2, 3), 2);
    }

    #[test]
    fn exhaustive_against_scan() {
        let mut x: u64 = 0x9e3779b97f4a7c15;
        for len in [1usize, 2, 3, 7, 64, 100, 512] {
            let values: Vec<usize> = (0..len)
                .map(|_| {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    (x % 9) as usize
                })
                .collect();
            let rmq = Rmq::build(&values);
            for l in 1..=len {
                for r in l..=len {
                    assert_eq!(rmq.query(l, r), scan(&values, l, r));
                }
            }
        }
    }

    fn brute_lcp(c: &Corpus, g: &GsaIndex, r1: usize, r2: usize) -> usize {
        let a = g.suffix(r1);
        let b = g.suffix(r2);
        let ta = &c.text(a.doc).unwrap()[a.pos - 1..];
        let tb = &c.text(b.doc).unwrap()[b.pos - 1..];
        ta.iter().zip(tb).take_while(|(x, y)| x == y).count()
    }

    #[test]
    fn lcp_between_examples() {
        let c = Corpus::from_texts(["ab", "b"]).unwrap();
        let g = GsaIndex::build(&c);
        let rmq = Rmq::build(g.lcp().as_slice());
        assert_eq!(lcp_between(&g, &rmq, 2, 3).unwrap(), 1);
        assert_eq!(lcp_between(&g, &rmq, 1, 1).unwrap(), 2);
        assert_eq!(
            lcp_between(&g, &rmq, 0, 1),
            Err(Error::RankOutOfRange { rank: 0, max: 3 })
        );
        assert!(lcp_between(&g, &rmq, 1, 4).is_err());

        let c = Corpus::from_texts(["abab"]).unwrap();
        let g = GsaIndex::build(&c);
        let rmq = Rmq::build(g.lcp().as_slice());
        assert_eq!(lcp_between(&g, &rmq, 1, 2).unwrap(), 2);
    }

    proptest! {
        #[test]
        fn lcp_matches_bytes(texts in proptest::collection::vec(proptest::collection::vec(b'a'..=b'c', 1..25), 1..6)) {
            let c = Corpus::from_texts(&texts).unwrap();
            let g = GsaIndex::build(&c);
            let rmq = Rmq::build(g.lcp().as_slice());
            let n = g.len();
            for r1 in 1..=n {
                for r2 in 1..=n {
                    let got = lcp_between(&g, &rmq, r1, r2).unwrap();
                    prop_assert_eq!(got, lcp_between(&g, &rmq, r2, r1).unwrap());
                    if r1 != r2 {
                        prop_assert_eq!(got, brute_lcp(&c, &g, r1, r2));
                    }
                }
            }
            // ultrametric
            for r1 in 1..=n {
                for r2 in r1..=n {
                    for r3 in r2..=n {
                        let a = lcp_between(&g, &rmq, r1, r3).unwrap();
                        let b = lcp_between(&g, &rmq, r1, r2).unwrap().min(lcp_between(&g, &rmq, r2, r3).unwrap());
                        prop_assert!(a >= b);
                    }
                }
            }
        }

        #[test]
        fn gsa_is_sorted(texts in proptest::collection::vec(proptest::collection::vec(b'a'..=b'c', 1..30), 1..8)) {
            let c = Corpus::from_texts(&texts).unwrap();
            let g = GsaIndex::build(&c);
            prop_assert_eq!(g.len(), c.total_len());
            // sentinel ordering: text then document id
            let key = |r: usize| {
                let s = g.suffix(r);
                (c.text(s.doc).unwrap()[s.pos - 1..].to_vec(), s.doc)
            };
            for r in 1..g.len() {
                prop_assert!(key(r) < key(r + 1));
            }
        }
    }
}
