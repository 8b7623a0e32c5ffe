use alloc::vec::Vec;

use crate::Permutation;

/// Number of inversions `#{i < j : σ(i) > σ(j)}`, by merge counting.
pub fn kendall_tau(sigma: &Permutation) -> u64 {
    let mut a: Vec<u32> = sigma.images().to_vec();
    let mut buf = alloc::vec![0u32; a.len()];
    sort_count(&mut a, &mut buf)
}

fn sort_count(a: &mut [u32], buf: &mut [u32]) -> u64 {
    let n = a.len();
    if n <= 16 {
        // insertion sort; every shift is one inversion
        let mut inv = 0;
        for i in 1..n {
            let x = a[i];
            let mut j = i;
            while j > 0 && a[j - 1] > x {
                a[j] = a[j - 1];
                j -= 1;
            }
            inv += (i - j) as u64;
            a[j] = x;
        }
        return inv;
    }
    let mid = n / 2;
    let (left, right) = a.split_at_mut(mid);
    let mut inv = sort_count(left, &mut buf[..mid]) + sort_count(right, &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            buf[k] = right[j];
            inv += (left.len() - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + left.len() - i].copy_from_slice(&left[i..]);
    k += left.len() - i;
    buf[k..k + right.len() - j].copy_from_slice(&right[j..]);
    a.copy_from_slice(&buf[..n]);
    inv
}
