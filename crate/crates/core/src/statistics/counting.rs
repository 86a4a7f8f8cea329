use crate::error::{Error, Result};
use crate::geometry::{Cluster, Patch, Point, PointSource, Region};

/// `L_P(A) = #{x : x + P ⊂ A ∩ Λ}`.
pub fn count_cluster(source: &dyn PointSource, p: &Cluster, a: &Region) -> Result<u64> {
    let patch = source.window(a)?;
    count_in_patch(&patch, p, a)
}

/// Translates `x` with `x + P ⊂ A ∩ patch`, where `A` lies inside the patch region.
pub fn occurrences(patch: &Patch, p: &Cluster, a: &Region) -> Result<Vec<Point>> {
    let (color, anchor) = p.anchor().ok_or(Error::EmptyCluster)?;
    if p.colors() != patch.colors() {
        return Err(Error::ColorMismatch {
            expected: patch.colors(),
            found: p.colors(),
        });
    }
    let mut out = Vec::new();
    for q in patch.cluster().part(color) {
        if !a.contains(q) {
            continue;
        }
        let x = *q - anchor;
        let fits = p.support().all(|(c, y)| {
            let z = x + *y;
            a.contains(&z) && patch.contains_point(c, &z)
        });
        if fits {
            out.push(x);
        }
    }
    Ok(out)
}

pub fn count_in_patch(patch: &Patch, p: &Cluster, a: &Region) -> Result<u64> {
    Ok(occurrences(patch, p, a)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LatticeSource;

    fn pts(xs: &[f64]) -> Cluster {
        Cluster::new(vec![xs.iter().map(|&x| Point::x(x)).collect()])
    }

    #[test]
    fn lattice_counts() {
        let z = LatticeSource::integers();
        let a = Region::interval(0.0, 10.0);
        assert_eq!(count_cluster(&z, &pts(&[0.0]), &a).unwrap(), 11);
        assert_eq!(count_cluster(&z, &pts(&[0.0, 1.0]), &a).unwrap(), 10);
        assert_eq!(count_cluster(&z, &pts(&[0.0, 0.5]), &a).unwrap(), 0);
        assert!(matches!(count_cluster(&z, &Cluster::empty(1), &a), Err(Error::EmptyCluster)));
    }
}
