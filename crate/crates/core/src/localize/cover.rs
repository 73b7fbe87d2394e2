//! Greedy maximal packings whose doubled balls cover, and the squared
//! partitions of unity subordinate to them.

use crate::error::Error;
use crate::localize::domain::DiscreteDomain;
use crate::Result;

/// A packing-and-cover system with its partition of unity: disjoint open
/// balls B(c_j, R′), covering doubled balls B(c_j, 2R′), node weights ρ_j
/// with Σ_j ρ_j² = 1 everywhere.
#[derive(Debug, Clone)]
pub struct CoverSystem {
    pub centers: Vec<usize>,
    pub small_radius: f64,
    /// ρ_j per center per node (not squared).
    pub partition: Vec<Vec<f64>>,
    /// Measured gradient constant: max_j max_edge |∇ρ_j| · R′.
    pub c_cover: f64,
    /// Maximum number of doubled balls any node lies in.
    pub overlap_bound: usize,
}

/// Builds a Gromov-style cover: centers chosen farthest-first while they
/// stay ≥ 2R′ apart (so the R′-balls are disjoint), which by maximality
/// makes the 2R′-balls cover. The partition is the square-normalized tent
/// system on the doubled balls.
pub fn gromov_cover(domain: &DiscreteDomain, r_prime: f64) -> Result<CoverSystem> {
    if !(r_prime >= 4.0 * domain.spacing()) {
        return Err(Error::invalid("need R' ≥ 4·spacing"));
    }
    let n = domain.node_count();

    // farthest-first traversal, ties broken by node index
    let mut centers = vec![0usize];
    let mut min_dist = domain.distances_from(0);
    loop {
        let mut best = 0usize;
        let mut best_d = -1.0f64;
        for i in 0..n {
            if min_dist[i] > best_d {
                best_d = min_dist[i];
                best = i;
            }
        }
        if best_d < 2.0 * r_prime {
            break;
        }
        centers.push(best);
        let d_new = domain.distances_from(best);
        for i in 0..n {
            min_dist[i] = min_dist[i].min(d_new[i]);
        }
    }

    let center_dists: Vec<Vec<f64>> = centers
        .iter()
        .map(|&c| domain.distances_from(c))
        .collect();

    // packing check: open R′-balls disjoint ⟺ pairwise distances ≥ 2R′
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            if center_dists[a][centers[b]] < 2.0 * r_prime {
                return Err(Error::consistency("packing produced centers closer than 2R'"));
            }
        }
    }
    // covering check: every node within 2R′ of some center (exhaustive)
    let mut overlap_bound = 0usize;
    for i in 0..n {
        let overlap = center_dists.iter().filter(|d| d[i] < 2.0 * r_prime).count();
        if overlap == 0 {
            return Err(Error::consistency("doubled balls fail to cover the domain"));
        }
        overlap_bound = overlap_bound.max(overlap);
    }

    // squared-tent partition from trapezoid profiles: t_j ≡ 1 on the
    // doubled ball, falling linearly to 0 at 3R′. The covering center's
    // profile is 1 at every node, so the normalization Σ t² stays ≥ 1 and
    // the normalized gradients remain O(1/R′); tents cut off at 2R′ would
    // let the quotient Σt² vanish at barely covered nodes and spike the
    // measured constant.
    let tents: Vec<Vec<f64>> = center_dists
        .iter()
        .map(|d| {
            d.iter()
                .map(|&dist| (1.0 - (dist - 2.0 * r_prime).max(0.0) / r_prime).max(0.0))
                .collect()
        })
        .collect();
    let mut sumsq = vec![0.0f64; n];
    for t in &tents {
        for (s, &v) in sumsq.iter_mut().zip(t) {
            *s += v * v;
        }
    }
    if sumsq.iter().any(|&s| s <= 0.0) {
        return Err(Error::consistency("partition denominator vanished"));
    }
    let partition: Vec<Vec<f64>> = tents
        .iter()
        .map(|t| {
            t.iter()
                .zip(&sumsq)
                .map(|(&v, &s)| v / s.sqrt())
                .collect()
        })
        .collect();

    // measured gradient constant on edges
    let mut max_grad = 0.0f64;
    for rho in &partition {
        for u in 0..n {
            for &v in domain.neighbors(u) {
                if v > u {
                    let g = (rho[u] - rho[v]).abs() / domain.spacing();
                    max_grad = max_grad.max(g);
                }
            }
        }
    }
    let c_cover = max_grad * r_prime;

    Ok(CoverSystem {
        centers,
        small_radius: r_prime,
        partition,
        c_cover,
        overlap_bound,
    })
}

impl CoverSystem {
    /// Largest deviation of Σ_j ρ_j² from 1 over all nodes.
    pub fn partition_defect(&self) -> f64 {
        let n = self.partition[0].len();
        (0..n)
            .map(|i| {
                let s: f64 = self.partition.iter().map(|rho| rho[i] * rho[i]).sum();
                (s - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_cover_has_expected_center_count() {
        let d = DiscreteDomain::interval(100.0, 0.5).unwrap();
        let c = gromov_cover(&d, 10.0).unwrap();
        assert!(
            (5..=6).contains(&c.centers.len()),
            "got {} centers",
            c.centers.len()
        );
        assert!(c.partition_defect() < 1e-14);
    }

    #[test]
    fn oversized_radius_gives_single_ball() {
        let d = DiscreteDomain::interval(10.0, 0.5).unwrap();
        let c = gromov_cover(&d, 20.0).unwrap();
        assert_eq!(c.centers.len(), 1);
        assert!(c.partition_defect() < 1e-14);
    }

    #[test]
    fn star_cover_overlap_bounded_by_degree() {
        let branches = 4;
        let d = DiscreteDomain::star(branches, 8, 1.0).unwrap();
        let c = gromov_cover(&d, 4.0).unwrap();
        // every leaf tip must be covered; overlap cannot exceed the number
        // of arms plus one
        assert!(c.overlap_bound <= branches + 1);
        let tips: Vec<usize> = (0..branches).map(|b| 1 + b * 8 + 7).collect();
        for tip in tips {
            let covered = c
                .centers
                .iter()
                .enumerate()
                .any(|(j, _)| c.partition[j][tip] > 0.0);
            assert!(covered);
        }
    }
}
