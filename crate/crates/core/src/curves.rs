//! Polygonal curves with the per-curve data the deciders rely on: prefix
//! lengths and an axis-aligned bounding box, both filled in while parsing.
//!
//! Continuous indices are 0-based: a curve with `n` vertices has parameter
//! range `[0, n - 1]`, and `p = i + λ` denotes `(1 − λ)·v[i] + λ·v[i + 1]`.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::geometry::{dist, interpolate, Point, Segment};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("curve has no vertices")]
    EmptyCurve,
    #[error("malformed vertex on line {line}: {content:?}")]
    MalformedVertex { line: usize, content: String },
    #[error("non-finite coordinate on line {line}")]
    NonFinite { line: usize },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BoundingBox {
    fn of(p: Point) -> Self {
        BoundingBox {
            min_x: p.x,
            min_y: p.y,
            max_x: p.x,
            max_y: p.y,
        }
    }

    fn extend(&mut self, p: Point) {
        self.min_x = self.min_x.min(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_x = self.max_x.max(p.x);
        self.max_y = self.max_y.max(p.y);
    }

    pub fn contains(&self, p: Point) -> bool {
        self.min_x <= p.x && p.x <= self.max_x && self.min_y <= p.y && p.y <= self.max_y
    }

    /// Squared distance between the farthest pair of points of the two boxes.
    pub fn max_sq_dist(&self, other: &BoundingBox) -> f64 {
        let dx = (self.max_x - other.min_x).max(other.max_x - self.min_x);
        let dy = (self.max_y - other.min_y).max(other.max_y - self.min_y);
        dx * dx + dy * dy
    }
}

#[derive(Clone, Debug)]
pub struct Curve {
    id: String,
    vertices: Vec<Point>,
    prefix_len: Vec<f64>,
    bbox: BoundingBox,
}

impl Curve {
    /// Builds a curve and its preprocessing in one pass over the vertices.
    pub fn new(id: impl Into<String>, vertices: Vec<Point>) -> Result<Self, CurveError> {
        let first = *vertices.first().ok_or(CurveError::EmptyCurve)?;
        let mut bbox = BoundingBox::of(first);
        let mut prefix_len = Vec::with_capacity(vertices.len());
        prefix_len.push(0.0);
        for w in vertices.windows(2) {
            bbox.extend(w[1]);
            let last = *prefix_len.last().unwrap();
            prefix_len.push(last + dist(w[0], w[1]));
        }
        Ok(Curve {
            id: id.into(),
            vertices,
            prefix_len,
            bbox,
        })
    }

    pub fn from_xy(id: impl Into<String>, xy: &[(f64, f64)]) -> Result<Self, CurveError> {
        Curve::new(id, xy.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn set_id(&mut self, id: impl Into<String>) {
        self.id = id.into();
    }

    /// Number of vertices.
    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest valid (continuous or integer) index.
    #[inline]
    pub fn last_index(&self) -> usize {
        self.vertices.len() - 1
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn prefix_lengths(&self) -> &[f64] {
        &self.prefix_len
    }

    pub fn bbox(&self) -> &BoundingBox {
        &self.bbox
    }

    /// Segment from vertex `k` to `k + 1`.
    #[inline]
    pub fn segment(&self, k: usize) -> Segment {
        Segment::new(self.vertices[k], self.vertices[k + 1])
    }

    /// Length of the subcurve between vertices `i ≤ i2`.
    #[inline]
    pub fn subcurve_len(&self, i: usize, i2: usize) -> f64 {
        debug_assert!(i <= i2 && i2 < self.len());
        self.prefix_len[i2] - self.prefix_len[i]
    }

    /// Point at continuous index `p ∈ [0, n − 1]`. Integer indices return
    /// the vertex bitwise.
    #[inline]
    pub fn point_at(&self, p: f64) -> Point {
        let last = self.last_index();
        if p <= 0.0 {
            return self.vertices[0];
        }
        if p >= last as f64 {
            return self.vertices[last];
        }
        let i = p.floor() as usize;
        let lambda = p - i as f64;
        interpolate(self.segment(i), lambda)
    }

    /// Parses whitespace-separated `x y` pairs, one vertex per line. Blank
    /// lines and `#` comments are skipped; a non-numeric first line is taken
    /// as a header.
    pub fn parse(id: impl Into<String>, text: &str) -> Result<Self, CurveError> {
        let mut vertices = Vec::new();
        let mut seen_content = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse::<f64>().ok()).collect();
            let first_content = !seen_content;
            seen_content = true;
            match parsed {
                Some(v) if v.len() == 2 => {
                    if !v[0].is_finite() || !v[1].is_finite() {
                        return Err(CurveError::NonFinite { line: lineno + 1 });
                    }
                    vertices.push(Point::new(v[0], v[1]));
                }
                None if first_content => continue,
                _ => {
                    return Err(CurveError::MalformedVertex {
                        line: lineno + 1,
                        content: line.to_string(),
                    })
                }
            }
        }
        Curve::new(id, vertices)
    }

    pub fn load(path: &Path) -> Result<Self, CurveError> {
        let text = fs::read_to_string(path).map_err(|source| CurveError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Curve::parse(path.to_string_lossy(), &text)
    }

    /// Writes the curve in the same plain format [`Curve::parse`] reads.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&format!("{} {}\n", v.x, v.y));
        }
        s
    }
}

/// Reads a dataset file: one curve path per line, relative to the dataset
/// file's directory. The curve id is the path as written in the file.
pub fn load_dataset(path: &Path) -> Result<Vec<Curve>, CurveError> {
    let text = fs::read_to_string(path).map_err(|source| CurveError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut curves = Vec::new();
    for line in text.lines() {
        let entry = line.trim();
        if entry.is_empty() || entry.starts_with('#') {
            continue;
        }
        let mut curve = Curve::load(&base.join(entry))?;
        curve.set_id(entry);
        curves.push(curve);
    }
    Ok(curves)
}

/// Writes `curves` as individual files next to a dataset index file.
pub fn write_dataset(dir: &Path, index_name: &str, curves: &[Curve]) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut index = String::new();
    for c in curves {
        let name = format!("{}.txt", c.id());
        fs::write(dir.join(&name), c.to_text())?;
        index.push_str(&name);
        index.push('\n');
    }
    let index_path = dir.join(index_name);
    fs::write(&index_path, index)?;
    Ok(index_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_unit_steps() {
        let c = Curve::parse("a", "0 0\n1 0\n1 1").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.prefix_lengths(), &[0.0, 1.0, 2.0]);
        assert_eq!(
            *c.bbox(),
            BoundingBox {
                min_x: 0.0,
                min_y: 0.0,
                max_x: 1.0,
                max_y: 1.0
            }
        );
        assert_eq!(c.subcurve_len(0, 2), 2.0);
        assert_eq!(c.subcurve_len(1, 1), 0.0);
    }

    #[test]
    fn parse_single_vertex() {
        let c = Curve::parse("p", "5 5").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.point_at(0.0), Point::new(5.0, 5.0));
    }

    #[test]
    fn parse_duplicate_vertex() {
        let c = Curve::parse("d", "0 0\n0 0\n3 4").unwrap();
        assert_eq!(c.prefix_lengths(), &[0.0, 0.0, 5.0]);
        assert_eq!(c.subcurve_len(0, 1), 0.0);
    }

    #[test]
    fn parse_header_and_comments() {
        let c = Curve::parse("h", "x y\n# comment\n\n1 2\n3 4\n").unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Curve::parse("e", ""), Err(CurveError::EmptyCurve)));
        assert!(matches!(Curve::parse("e", "# only\n"), Err(CurveError::EmptyCurve)));
        assert!(matches!(
            Curve::parse("e", "0 0\n1 2 3\n"),
            Err(CurveError::MalformedVertex { line: 2, .. })
        ));
        assert!(matches!(
            Curve::parse("e", "0 0\nfoo bar\n"),
            Err(CurveError::MalformedVertex { line: 2, .. })
        ));
        assert!(matches!(Curve::parse("e", "0 0\nnan 1\n"), Err(CurveError::NonFinite { line: 2 })));
    }

    #[test]
    fn point_at_examples() {
        let c = Curve::from_xy("sq", &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]).unwrap();
        assert_eq!(c.point_at(1.5), Point::new(1.0, 0.5));
        assert_eq!(c.point_at(0.0), c.first());
        assert_eq!(c.point_at(2.0), c.last());
        assert_eq!(c.point_at(1.0), c.vertex(1));
    }

    #[test]
    fn bbox_max_dist() {
        let a = Curve::from_xy("a", &[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        let b = Curve::from_xy("b", &[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(a.bbox().max_sq_dist(b.bbox()), 2.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn curve() -> impl Strategy<Value = Curve> {
            prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..40)
                .prop_map(|xy| Curve::from_xy("c", &xy).unwrap())
        }

        proptest! {
            #[test]
            fn prefix_lengths_match_direct_sum(c in curve()) {
                for i in 0..c.len() {
                    for i2 in i..c.len() {
                        let direct: f64 = (i..i2).map(|k| dist(c.vertex(k), c.vertex(k + 1))).sum();
                        let got = c.subcurve_len(i, i2);
                        prop_assert!((got - direct).abs() <= 1e-9 * direct.max(1.0));
                    }
                }
                prop_assert!(c.prefix_lengths().windows(2).all(|w| w[0] <= w[1]));
            }

            #[test]
            fn bbox_is_tight(c in curve()) {
                let b = *c.bbox();
                prop_assert!(c.vertices().iter().all(|&v| b.contains(v)));
                prop_assert!(c.vertices().iter().any(|v| v.x == b.min_x));
                prop_assert!(c.vertices().iter().any(|v| v.x == b.max_x));
                prop_assert!(c.vertices().iter().any(|v| v.y == b.min_y));
                prop_assert!(c.vertices().iter().any(|v| v.y == b.max_y));
            }

            #[test]
            fn point_at_is_continuous(c in curve(), p in 0.0f64..1.0, eps in 0.0f64..1e-3) {
                let p = p * c.last_index() as f64;
                let q = (p + eps).min(c.last_index() as f64);
                let max_seg = (0..c.last_index()).map(|k| c.subcurve_len(k, k + 1)).fold(0.0, f64::max);
                prop_assert!(dist(c.point_at(p), c.point_at(q)) <= (q - p) * max_seg + 1e-9);
            }
        }
    }
}
