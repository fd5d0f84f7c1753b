use super::Permutation;
use crate::error::{Error, Result};

/// Orbits of the group generated by `generators` on `{0, .., domain_size-1}`.
///
/// Each orbit is sorted ascending; orbits are listed longest first, ties broken
/// by smallest element.
pub fn orbits(generators: &[Permutation], domain_size: usize) -> Result<Vec<Vec<usize>>> {
    for g in generators {
        if g.degree() != domain_size {
            return Err(Error::DegreeMismatch {
                expected: domain_size,
                actual: g.degree(),
            });
        }
    }
    let mut label = vec![usize::MAX; domain_size];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..domain_size {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orb = vec![start];
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            for g in generators {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    sort_orbits(&mut out);
    Ok(out)
}

pub(crate) fn sort_orbits(orbs: &mut [Vec<usize>]) {
    orbs.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
}

/// The orbit of a single point, in breadth-first discovery order.
pub fn orbit_of(generators: &[Permutation], point: usize) -> Vec<usize> {
    let n = generators.first().map(|g| g.degree()).unwrap_or(point + 1);
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut orb = vec![point];
    let mut i = 0;
    while i < orb.len() {
        let x = orb[i];
        for g in generators {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orb.push(y);
            }
        }
        i += 1;
    }
    orb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_ordering() {
        let a = Permutation::from_cycles(6, &[&[3, 4]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[0, 5, 2]]).unwrap();
        let o = orbits(&[a, b], 6).unwrap();
        assert_eq!(o, vec![vec![0, 2, 5], vec![3, 4], vec![1]]);
        assert_eq!(orbits(&[], 3).unwrap(), vec![vec![0], vec![1], vec![2]]);
    }
}
