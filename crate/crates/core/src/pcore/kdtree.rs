use super::{Neighborhood, PointCloud};
use crate::{Error, Result, Vec3};

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone)]
struct Node {
    lo: Vec3,
    hi: Vec3,
    start: usize,
    end: usize,
    children: Option<(usize, usize)>,
}

impl Node {
    fn min_dist2(&self, q: &Vec3) -> f64 {
        let mut d2 = 0.0;
        for a in 0..3 {
            let d = if q[a] < self.lo[a] {
                self.lo[a] - q[a]
            } else if q[a] > self.hi[a] {
                q[a] - self.hi[a]
            } else {
                0.0
            };
            d2 += d * d;
        }
        d2
    }
}

/// Immutable kd-tree answering exact k-nearest-neighbor queries.
///
/// Results match an exhaustive scan exactly, including the tie-break on
/// equal distances (smaller point index first). Queries take `&self` and
/// are safe to issue from many threads at once.
#[derive(Debug, Clone)]
pub struct SpatialIndex {
    points: Vec<Vec3>,
    ids: Vec<usize>,
    nodes: Vec<Node>,
    source: Vec<Vec3>,
}

impl SpatialIndex {
    pub fn new(cloud: &PointCloud) -> Self {
        let mut ids: Vec<usize> = (0..cloud.len()).collect();
        let mut nodes = Vec::with_capacity(2 * cloud.len() / LEAF_SIZE + 1);
        build(cloud.points(), &mut ids, 0, cloud.len(), &mut nodes);
        let points = ids.iter().map(|&i| cloud[i]).collect();
        Self {
            points,
            ids,
            nodes,
            source: cloud.points().to_vec(),
        }
    }

    /// Point `i` of the indexed cloud, in the cloud's own order.
    pub fn point(&self, i: usize) -> &Vec3 {
        &self.source[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The `k` nearest points to `query`.
    pub fn knn(&self, query: &Vec3, k: usize) -> Result<Neighborhood> {
        let mut buf = Vec::with_capacity(k);
        self.knn_into(query, k, &mut buf)?;
        Ok(Neighborhood {
            indices: buf.iter().map(|&(_, i)| i).collect(),
            distances: buf.iter().map(|&(d2, _)| d2.sqrt()).collect(),
        })
    }

    /// Fills `out` with `(squared distance, index)` pairs of the `k` nearest
    /// points in ascending `(distance, index)` order.
    pub fn knn_into(&self, query: &Vec3, k: usize, out: &mut Vec<(f64, usize)>) -> Result<()> {
        if k == 0 || k > self.len() {
            return Err(Error::InvalidK { k, n: self.len() });
        }
        out.clear();
        self.search(0, query, k, out);
        Ok(())
    }

    /// The `k` nearest points to cloud point `i`, excluding `i` itself.
    pub fn knn_excluding(&self, query: &Vec3, k: usize, exclude: usize) -> Result<Neighborhood> {
        if k == 0 || k >= self.len() {
            return Err(Error::InvalidK { k, n: self.len() });
        }
        let mut buf = Vec::with_capacity(k + 1);
        self.knn_into(query, k + 1, &mut buf)?;
        match buf.iter().position(|&(_, i)| i == exclude) {
            Some(pos) => {
                buf.remove(pos);
            }
            None => buf.truncate(k),
        }
        Ok(Neighborhood {
            indices: buf.iter().map(|&(_, i)| i).collect(),
            distances: buf.iter().map(|&(d2, _)| d2.sqrt()).collect(),
        })
    }

    /// Index and distance of the nearest point.
    pub fn nearest(&self, query: &Vec3) -> (usize, f64) {
        let mut buf = Vec::with_capacity(1);
        self.search(0, query, 1, &mut buf);
        (buf[0].1, buf[0].0.sqrt())
    }

    pub fn nearest_distance(&self, query: &Vec3) -> f64 {
        self.nearest(query).1
    }

    pub fn nearest_distances(&self, queries: &[Vec3]) -> Vec<f64> {
        queries.iter().map(|q| self.nearest_distance(q)).collect()
    }

    fn search(&self, node: usize, q: &Vec3, k: usize, best: &mut Vec<(f64, usize)>) {
        let n = &self.nodes[node];
        match n.children {
            None => {
                for slot in n.start..n.end {
                    let d2 = (q - self.points[slot]).norm_squared();
                    offer(best, k, d2, self.ids[slot]);
                }
            }
            Some((l, r)) => {
                let dl = self.nodes[l].min_dist2(q);
                let dr = self.nodes[r].min_dist2(q);
                let order = if dl <= dr { [(l, dl), (r, dr)] } else { [(r, dr), (l, dl)] };
                for (child, d) in order {
                    // Equal distance may still hold a smaller index, so prune only on strict excess.
                    if best.len() == k && d > best[k - 1].0 {
                        continue;
                    }
                    self.search(child, q, k, best);
                }
            }
        }
    }
}

fn offer(best: &mut Vec<(f64, usize)>, k: usize, d2: f64, id: usize) {
    let key = (d2, id);
    let less = |a: &(f64, usize), b: &(f64, usize)| a.0 < b.0 || (a.0 == b.0 && a.1 < b.1);
    if best.len() == k {
        if !less(&key, &best[k - 1]) {
            return;
        }
        best.pop();
    }
    let pos = best.partition_point(|e| less(e, &key));
    best.insert(pos, key);
}

fn build(pts: &[Vec3], ids: &mut [usize], start: usize, end: usize, nodes: &mut Vec<Node>) -> usize {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for &i in &ids[start..end] {
        lo = lo.inf(&pts[i]);
        hi = hi.sup(&pts[i]);
    }
    let me = nodes.len();
    nodes.push(Node {
        lo,
        hi,
        start,
        end,
        children: None,
    });
    let extent = hi - lo;
    let axis = extent.imax();
    if end - start <= LEAF_SIZE || extent[axis] == 0.0 {
        return me;
    }
    let mid = (end - start) / 2;
    ids[start..end].select_nth_unstable_by(mid, |&a, &b| {
        pts[a][axis].total_cmp(&pts[b][axis]).then(a.cmp(&b))
    });
    let left = build(pts, ids, start, start + mid, nodes);
    let right = build(pts, ids, start + mid, end, nodes);
    nodes[me].children = Some((left, right));
    me
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(cloud: &PointCloud, q: &Vec3, k: usize) -> Vec<(usize, f64)> {
        let mut all: Vec<(usize, f64)> = cloud.iter().enumerate().map(|(i, p)| (i, (q - p).norm())).collect();
        all.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        all.truncate(k);
        all
    }

    fn random_cloud(rng: &mut ChaCha8Rng, n: usize) -> PointCloud {
        PointCloud::new(
            (0..n)
                .map(|_| Vec3::new(rng.random(), rng.random(), rng.random()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_point() {
        let c = PointCloud::from_rows(&[[1.0, 2.0, 3.0]]).unwrap();
        let idx = SpatialIndex::new(&c);
        let nb = idx.knn(&Vec3::new(-5.0, 0.0, 9.0), 1).unwrap();
        assert_eq!(nb.indices, vec![0]);
        assert!(idx.knn(&Vec3::zeros(), 2).is_err());
    }

    #[test]
    fn collinear() {
        let c = PointCloud::from_rows(&[[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [3.0, 0.0, 0.0]]).unwrap();
        let nb = SpatialIndex::new(&c).knn(&Vec3::zeros(), 2).unwrap();
        assert_eq!(nb.indices, vec![0, 1]);
        assert_eq!(nb.distances, vec![1.0, 2.0]);
    }

    #[test]
    fn thousand_points_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = random_cloud(&mut rng, 1000);
        let idx = SpatialIndex::new(&c);
        for _ in 0..200 {
            let q = Vec3::new(rng.random(), rng.random(), rng.random()) * 1.2;
            for k in [1, 5, 17] {
                let nb = idx.knn(&q, k).unwrap();
                let expect = brute(&c, &q, k);
                assert_eq!(nb.indices, expect.iter().map(|e| e.0).collect::<Vec<_>>());
                assert_eq!(nb.distances, expect.iter().map(|e| e.1).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn duplicates_break_ties_by_index() {
        let c = PointCloud::from_rows(&[[0.0; 3], [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]]).unwrap();
        let idx = SpatialIndex::new(&c);
        let nb = idx.knn(&Vec3::zeros(), 3).unwrap();
        assert_eq!(nb.indices, vec![0, 2, 3]);
        let ex = idx.knn_excluding(&Vec3::zeros(), 2, 2).unwrap();
        assert_eq!(ex.indices, vec![0, 3]);
        // Many identical points collapse to one leaf.
        let same = PointCloud::new(vec![Vec3::new(0.5, 0.5, 0.5); 40]).unwrap();
        let nb = SpatialIndex::new(&same).knn(&Vec3::zeros(), 4).unwrap();
        assert_eq!(nb.indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn excluding_self() {
        let c = PointCloud::from_rows(&[[0.0; 3], [1.0, 0.0, 0.0], [3.0, 0.0, 0.0]]).unwrap();
        let idx = SpatialIndex::new(&c);
        let nb = idx.knn_excluding(&c[1], 1, 1).unwrap();
        assert_eq!(nb.indices, vec![0]);
        assert_eq!(nb.distances, vec![1.0]);
        assert!(idx.knn_excluding(&c[1], 3, 1).is_err());
    }

    #[test]
    fn nearest_on_sphere_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Vec3> = (0..2000)
            .map(|_| {
                let v = Vec3::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                v.normalize()
            })
            .collect();
        let c = PointCloud::new(pts).unwrap();
        let idx = SpatialIndex::new(&c);
        let q = Vec3::new(0.0, 0.0, 2.0);
        let oracle = c.iter().map(|p| (q - p).norm()).fold(f64::INFINITY, f64::min);
        let d = idx.nearest_distance(&q);
        assert_eq!(d, oracle);
        assert!((d - 1.0).abs() < 0.05);
        assert!(idx.nearest_distances(&[]).is_empty());
        assert_eq!(idx.nearest_distance(&c[10]), 0.0);
    }
}
