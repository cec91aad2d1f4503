use serde::Serialize;

use crate::exact_arith::BigComplex;

/// Group of roots joined by single linkage at a fixed distance.
#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    pub size: usize,
    pub centroid: (f64, f64),
    /// Largest pairwise distance inside the group.
    pub diameter: f64,
}

/// Single-linkage clusters of `roots` with link distance `link`,
/// sorted by centroid argument.
pub fn clusters(roots: &[BigComplex], link: f64) -> Vec<Cluster> {
    let pts: Vec<(f64, f64)> = roots.iter().map(|z| (z.re_f64(), z.im_f64())).collect();
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    let dist = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
    for i in 0..n {
        for j in i + 1..n {
            if dist(pts[i], pts[j]) <= link {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Cluster> = groups
        .values()
        .map(|members| {
            let size = members.len();
            let cx = members.iter().map(|&i| pts[i].0).sum::<f64>() / size as f64;
            let cy = members.iter().map(|&i| pts[i].1).sum::<f64>() / size as f64;
            let mut diameter = 0.0f64;
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    diameter = diameter.max(dist(pts[i], pts[j]));
                }
            }
            Cluster {
                size,
                centroid: (cx, cy),
                diameter,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.centroid
            .1
            .atan2(a.centroid.0)
            .total_cmp(&b.centroid.1.atan2(b.centroid.0))
    });
    out
}
