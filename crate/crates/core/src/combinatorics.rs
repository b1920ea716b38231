//! Subset enumeration helpers.

use std::ops::ControlFlow;

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset<F>(n: usize, k: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    for_each_subset_of(&(0..n).collect::<Vec<_>>(), k, &mut f)
}

/// Calls `f` on every `k`-subset of `items` (which should be sorted) in
/// lexicographic order.
pub fn for_each_subset_of<F>(items: &[usize], k: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if k > items.len() {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf)?;
        let mut i = k;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] < items.len() - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]];
        }
    }
}

/// All `k`-subsets of `items` as owned vectors.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_subset_of(items, k, &mut |s: &[usize]| {
        out.push(s.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// All orderings of `items`, in lexicographic order of positions.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_binomials() {
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(subsets(&(0..n).collect::<Vec<_>>(), k).len(), binom(n, k));
            }
        }
        assert_eq!(subsets(&[1, 4, 6], 2), vec![vec![1, 4], vec![1, 6], vec![4, 6]]);
        assert_eq!(subsets(&[1, 2], 3).len(), 0);
        assert_eq!(subsets(&[], 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(&[7, 8, 9]).len(), 6);
        assert_eq!(permutations(&[7, 8, 9])[1], vec![7, 9, 8]);
        let all = permutations(&[0, 1, 2, 3]);
        let mut uniq = all.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!((all.len(), uniq.len()), (24, 24));
    }
}
