//! Signed enumeration of all permutations of `0..n`.

/// Calls `visit(perm, sign)` once for every permutation of `0..n`, where
/// `sign` is `+1` for even and `-1` for odd permutations.
///
/// Uses Heap's algorithm: consecutive permutations differ by one
/// transposition, so the sign simply alternates.
pub fn for_each_signed_permutation(n: usize, mut visit: impl FnMut(&[usize], i8)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1i8;
    visit(&perm, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            visit(&perm, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}
