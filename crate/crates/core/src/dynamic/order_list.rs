//! Order-maintenance list with two-level labels.
//!
//! Elements are grouped into contiguous buckets of at most [`BUCKET_CAP`]
//! elements. Each bucket carries a label in a top-level list, and each
//! element a label inside its bucket, so comparing two elements is one
//! comparison of `(bucket label, element label)` pairs. An insertion takes
//! the midpoint of the neighbouring labels; when no gap is left the bucket
//! is relabelled evenly, and a bucket that outgrows its capacity is split in
//! two, which may in turn relabel the top-level list.

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub const BUCKET_CAP: usize = 64;

const NIL: u32 = u32::MAX;

/// Handle of a list element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub usize);

#[derive(Debug, Clone)]
struct Elem {
    prev: u32,
    next: u32,
    bucket: u32,
    label: u64,
}

#[derive(Debug, Clone)]
struct Bucket {
    label: u64,
    first: u32,
    len: u32,
    prev: u32,
    next: u32,
}

#[derive(Debug, Clone, Default)]
pub struct OrderList {
    elems: Vec<Elem>,
    buckets: Vec<Bucket>,
    head: u32,
    relabels: usize,
}

impl OrderList {
    pub fn new() -> Self {
        OrderList {
            head: NIL,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Bucket and top-level relabel passes performed so far.
    pub fn relabel_count(&self) -> usize {
        self.relabels
    }

    pub fn contains(&self, x: ElemId) -> bool {
        x.0 < self.elems.len()
    }

    fn check(&self, x: ElemId) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ElementNotInList(x.0))
        }
    }

    /// Inserts the first element of an empty list.
    pub fn insert_first(&mut self) -> Result<ElemId> {
        if !self.elems.is_empty() {
            return Err(Error::ElementNotInList(NIL as usize));
        }
        self.buckets.push(Bucket {
            label: u64::MAX / 2,
            first: 0,
            len: 1,
            prev: NIL,
            next: NIL,
        });
        self.elems.push(Elem {
            prev: NIL,
            next: NIL,
            bucket: 0,
            label: u64::MAX / 2,
        });
        self.head = 0;
        Ok(ElemId(0))
    }

    pub fn insert_after(&mut self, anchor: ElemId) -> Result<ElemId> {
        self.check(anchor)?;
        Ok(self.insert_after_unchecked(anchor.0 as u32))
    }

    pub fn insert_before(&mut self, anchor: ElemId) -> Result<ElemId> {
        self.check(anchor)?;
        let a = anchor.0 as u32;
        let prev = self.elems[a as usize].prev;
        if prev != NIL && self.elems[prev as usize].bucket == self.elems[a as usize].bucket {
            return Ok(self.insert_after_unchecked(prev));
        }
        // `a` opens its bucket: the new element becomes the bucket's first.
        let b = self.elems[a as usize].bucket;
        let id = self.elems.len() as u32;
        self.elems.push(Elem {
            prev,
            next: a,
            bucket: b,
            label: 0,
        });
        if prev != NIL {
            self.elems[prev as usize].next = id;
        } else {
            self.head = id;
        }
        self.elems[a as usize].prev = id;
        self.buckets[b as usize].first = id;
        self.buckets[b as usize].len += 1;
        let hi = self.elems[a as usize].label;
        if hi >= 2 {
            self.elems[id as usize].label = hi / 2;
        } else {
            self.relabel_bucket(b);
        }
        self.maybe_split(b);
        Ok(ElemId(id as usize))
    }

    fn insert_after_unchecked(&mut self, a: u32) -> ElemId {
        let b = self.elems[a as usize].bucket;
        let next = self.elems[a as usize].next;
        let same_bucket_next = next != NIL && self.elems[next as usize].bucket == b;
        let id = self.elems.len() as u32;
        self.elems.push(Elem {
            prev: a,
            next,
            bucket: b,
            label: 0,
        });
        self.elems[a as usize].next = id;
        if next != NIL {
            self.elems[next as usize].prev = id;
        }
        self.buckets[b as usize].len += 1;
        let lo = self.elems[a as usize].label;
        let hi = if same_bucket_next {
            self.elems[next as usize].label
        } else {
            u64::MAX
        };
        if hi - lo >= 2 {
            self.elems[id as usize].label = lo + (hi - lo) / 2;
        } else {
            self.relabel_bucket(b);
        }
        self.maybe_split(b);
        ElemId(id as usize)
    }

    fn relabel_bucket(&mut self, b: u32) {
        self.relabels += 1;
        let len = self.buckets[b as usize].len as u64;
        let step = u64::MAX / (len + 1);
        let mut e = self.buckets[b as usize].first;
        for k in 1..=len {
            self.elems[e as usize].label = step * k;
            e = self.elems[e as usize].next;
        }
    }

    fn maybe_split(&mut self, b: u32) {
        let len = self.buckets[b as usize].len as usize;
        if len <= BUCKET_CAP {
            return;
        }
        let keep = len / 2;
        let mut e = self.buckets[b as usize].first;
        for _ in 0..keep {
            e = self.elems[e as usize].next;
        }
        let nb = self.buckets.len() as u32;
        let next_bucket = self.buckets[b as usize].next;
        self.buckets.push(Bucket {
            label: 0,
            first: e,
            len: (len - keep) as u32,
            prev: b,
            next: next_bucket,
        });
        self.buckets[b as usize].len = keep as u32;
        self.buckets[b as usize].next = nb;
        if next_bucket != NIL {
            self.buckets[next_bucket as usize].prev = nb;
        }
        let mut x = e;
        for _ in keep..len {
            self.elems[x as usize].bucket = nb;
            x = self.elems[x as usize].next;
        }
        self.relabel_bucket(b);
        self.relabel_bucket(nb);

        let lo = self.buckets[b as usize].label;
        let hi = if next_bucket != NIL {
            self.buckets[next_bucket as usize].label
        } else {
            u64::MAX
        };
        if hi - lo >= 2 {
            self.buckets[nb as usize].label = lo + (hi - lo) / 2;
        } else {
            self.relabel_top();
        }
    }

    fn relabel_top(&mut self) {
        self.relabels += 1;
        let count = self.buckets.len() as u64;
        let step = u64::MAX / (count + 1);
        let mut b = self.elems[self.head as usize].bucket;
        let mut k = 1;
        while b != NIL {
            self.buckets[b as usize].label = step * k;
            k += 1;
            b = self.buckets[b as usize].next;
        }
    }

    fn key(&self, x: ElemId) -> (u64, u64) {
        let e = &self.elems[x.0];
        (self.buckets[e.bucket as usize].label, e.label)
    }

    /// Position of `x` relative to `y`: `Less` when `x` comes first.
    pub fn order(&self, x: ElemId, y: ElemId) -> Result<Ordering> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.key(x).cmp(&self.key(y)))
    }

    pub(crate) fn precedes(&self, x: ElemId, y: ElemId) -> bool {
        self.key(x) < self.key(y)
    }

    pub fn first(&self) -> Option<ElemId> {
        (self.head != NIL).then_some(ElemId(self.head as usize))
    }

    pub fn next(&self, x: ElemId) -> Option<ElemId> {
        let n = self.elems[x.0].next;
        (n != NIL).then_some(ElemId(n as usize))
    }

    pub fn prev(&self, x: ElemId) -> Option<ElemId> {
        let p = self.elems[x.0].prev;
        (p != NIL).then_some(ElemId(p as usize))
    }

    /// Elements in list order.
    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        std::iter::successors(self.first(), move |&x| self.next(x))
    }

    /// Checks that labels increase strictly along the list and that bucket
    /// bookkeeping is consistent.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let order: Vec<ElemId> = self.iter().collect();
        if order.len() != self.elems.len() {
            return Err(format!("walk saw {} of {} elements", order.len(), self.elems.len()));
        }
        for w in order.windows(2) {
            if self.key(w[0]) >= self.key(w[1]) {
                return Err(format!("labels out of order at {:?}", w));
            }
        }
        let mut counts = vec![0u32; self.buckets.len()];
        for &x in &order {
            counts[self.elems[x.0].bucket as usize] += 1;
        }
        for (b, bucket) in self.buckets.iter().enumerate() {
            if counts[b] != bucket.len || bucket.len as usize > BUCKET_CAP {
                return Err(format!("bucket {b} size mismatch"));
            }
        }
        Ok(())
    }
}
