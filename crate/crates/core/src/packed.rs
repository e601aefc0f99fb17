//! Compact keys for large permutation sets.
//!
//! The closure and level-generation engines keep millions of short
//! permutations alive at once. They are generic over [`PermKey`], which is
//! implemented both by a 64-bit packed code (lengths up to
//! [`PACKED_MAX_LEN`]) and by [`SignedPerm`] itself for anything longer.

use crate::perm::SignedPerm;

pub(crate) const PACKED_MAX_LEN: usize = 12;
const SLOT_BITS: u32 = 5;
const TOP_SHIFT: u32 = 55;

pub(crate) trait PermKey: Clone + Ord + Send + Sync {
    fn encode(entries: &[i32]) -> Self;
    fn decode_into(&self, out: &mut Vec<i32>);
    fn length(&self) -> usize;

    fn to_perm(&self) -> SignedPerm {
        let mut out = Vec::with_capacity(self.length());
        self.decode_into(&mut out);
        SignedPerm::from_entries_unchecked(out)
    }
}

/// Entry `j` occupies bits `55 - 5j ..= 59 - 5j` as `2|x| + [x < 0]`; an
/// all-zero slot ends the permutation. Within one length, the integer order
/// agrees with the shortlex order on [`SignedPerm`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) struct Packed(u64);

impl PermKey for Packed {
    fn encode(entries: &[i32]) -> Self {
        debug_assert!(entries.len() <= PACKED_MAX_LEN);
        let mut code = 0u64;
        for (j, &x) in entries.iter().enumerate() {
            let slot = (u64::from(x.unsigned_abs()) << 1) | u64::from(x < 0);
            code |= slot << (TOP_SHIFT - SLOT_BITS * j as u32);
        }
        Packed(code)
    }

    fn decode_into(&self, out: &mut Vec<i32>) {
        out.clear();
        for j in 0..PACKED_MAX_LEN as u32 {
            let slot = (self.0 >> (TOP_SHIFT - SLOT_BITS * j)) & 0x1f;
            if slot == 0 {
                break;
            }
            let a = (slot >> 1) as i32;
            out.push(if slot & 1 == 1 { -a } else { a });
        }
    }

    fn length(&self) -> usize {
        if self.0 == 0 {
            return 0;
        }
        // the lowest occupied slot determines the length
        let lowest_bit = self.0.trailing_zeros();
        PACKED_MAX_LEN - (lowest_bit / SLOT_BITS) as usize
    }
}

impl PermKey for SignedPerm {
    fn encode(entries: &[i32]) -> Self {
        SignedPerm::from_entries_unchecked(entries.to_vec())
    }

    fn decode_into(&self, out: &mut Vec<i32>) {
        out.clear();
        out.extend_from_slice(self.entries());
    }

    fn length(&self) -> usize {
        self.len()
    }

    fn to_perm(&self) -> SignedPerm {
        self.clone()
    }
}
