use std::fmt;
use std::sync::Arc;

use crate::term::Generator;

/// Identifier of an abstract point of a diagram. Ids are allocated in
/// creation order; the chain order is kept separately.
pub type PointId = u32;

/// The base point, written `0`.
pub const BASE: PointId = 0;

/// How the image of a point was obtained when a diagram was extended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// The partial map already defined the image.
    Forced,
    /// A new point was inserted strictly between two neighbours (or at an end).
    Strict,
    /// The image is an existing point.
    Equal,
}

/// A finite chain of points together with one partial order-isomorphism
/// per generator.
///
/// Each generator's map is a set of pairs `(p, p·y)`. Legitimacy means each
/// map is injective and strictly monotone: `p < q ⟺ p·y < q·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    generators: Arc<[Generator]>,
    order: Vec<PointId>,
    rank: Vec<u32>,
    maps: Vec<Vec<(PointId, PointId)>>,
    pub(crate) trace: Vec<PointId>,
}

/// One legitimate way of defining `p·y^ε`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub diagram: Diagram,
    pub image: PointId,
    pub placement: Placement,
}

impl Diagram {
    /// The diagram with only the base point and empty maps.
    pub fn new(generators: &[Generator]) -> Self {
        Diagram {
            generators: generators.into(),
            order: vec![BASE],
            rank: vec![0],
            maps: vec![Vec::new(); generators.len()],
            trace: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Point ids in ascending chain order.
    pub fn chain(&self) -> &[PointId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rank(&self, p: PointId) -> usize {
        self.rank[p as usize] as usize
    }

    pub fn contains(&self, p: PointId) -> bool {
        (p as usize) < self.rank.len()
    }

    pub fn pairs(&self, gen: usize) -> &[(PointId, PointId)] {
        &self.maps[gen]
    }

    /// Endpoints of the traced words, in tracing order.
    pub fn trace(&self) -> &[PointId] {
        &self.trace
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    /// `p·y^ε` if the partial map already defines it.
    pub fn image(&self, p: PointId, gen: usize, sign: i8) -> Option<PointId> {
        let pairs = &self.maps[gen];
        if sign > 0 {
            pairs.iter().find(|(a, _)| *a == p).map(|(_, b)| *b)
        } else {
            pairs.iter().find(|(_, b)| *b == p).map(|(a, _)| *a)
        }
    }

    /// Checks that every map is an injective, strictly monotone partial map
    /// between chain points.
    pub fn is_legitimate(&self) -> bool {
        if self.order.is_empty() || !self.contains(BASE) {
            return false;
        }
        for (i, p) in self.order.iter().enumerate() {
            if self.rank(*p) != i {
                return false;
            }
        }
        self.maps.iter().all(|pairs| {
            pairs.iter().all(|&(a, b)| self.contains(a) && self.contains(b))
                && pairs.iter().enumerate().all(|(i, &(a, b))| {
                    pairs[i + 1..].iter().all(|&(c, d)| {
                        let dom = self.rank(a).cmp(&self.rank(c));
                        let img = self.rank(b).cmp(&self.rank(d));
                        dom == img
                    })
                })
        })
    }

    /// Every legitimate way to define `p·g^ε`.
    ///
    /// If the image is already determined the single forced diagram is
    /// returned. Otherwise the image may be any new point in a gap of the
    /// admissible interval, or any existing point there that is not yet an
    /// image, so the result is never empty.
    pub fn extend(&self, p: PointId, g: &Generator, sign: i8) -> Vec<Extension> {
        let gen = self
            .generator_index(g)
            .unwrap_or_else(|| panic!("generator {g} not in diagram"));
        self.extend_at(p, gen, sign)
    }

    pub(crate) fn extend_at(&self, p: PointId, gen: usize, sign: i8) -> Vec<Extension> {
        debug_assert!(self.contains(p));
        if let Some(q) = self.image(p, gen, sign) {
            return vec![Extension {
                diagram: self.clone(),
                image: q,
                placement: Placement::Forced,
            }];
        }
        // Orient the pairs so that we look for an image of p under the map.
        let oriented = self.maps[gen]
            .iter()
            .map(|&(a, b)| if sign > 0 { (a, b) } else { (b, a) });
        let rp = self.rank(p) as i64;
        let mut lower: i64 = -1;
        let mut upper: i64 = self.order.len() as i64;
        let mut taken = Vec::new();
        for (dom, img) in oriented {
            let rd = self.rank(dom) as i64;
            let ri = self.rank(img) as i64;
            if rd < rp {
                lower = lower.max(ri);
            } else {
                upper = upper.min(ri);
            }
            taken.push(img);
        }
        let mut out = Vec::new();
        // New point inserted at chain position `pos`, for each gap in (lower, upper).
        for pos in (lower + 1)..=upper {
            let mut d = self.clone();
            let q = d.insert_at(pos as usize);
            d.add_pair(gen, sign, p, q);
            out.push(Extension {
                diagram: d,
                image: q,
                placement: Placement::Strict,
            });
        }
        for r in (lower + 1)..upper {
            let q = self.order[r as usize];
            if taken.contains(&q) {
                continue;
            }
            let mut d = self.clone();
            d.add_pair(gen, sign, p, q);
            out.push(Extension {
                diagram: d,
                image: q,
                placement: Placement::Equal,
            });
        }
        out
    }

    fn insert_at(&mut self, pos: usize) -> PointId {
        let id = self.rank.len() as PointId;
        self.order.insert(pos, id);
        self.rank.push(0);
        for (i, q) in self.order.iter().enumerate().skip(pos) {
            self.rank[*q as usize] = i as u32;
        }
        id
    }

    fn add_pair(&mut self, gen: usize, sign: i8, p: PointId, q: PointId) {
        let pair = if sign > 0 { (p, q) } else { (q, p) };
        self.maps[gen].push(pair);
    }

    /// Order-isomorphism invariant signature: points are relabelled by rank.
    pub(crate) fn signature_into(&self, out: &mut Vec<u32>) {
        out.push(self.order.len() as u32);
        out.push(self.rank[BASE as usize]);
        for pairs in &self.maps {
            let mut ranked: Vec<(u32, u32)> = pairs
                .iter()
                .map(|&(a, b)| (self.rank[a as usize], self.rank[b as usize]))
                .collect();
            ranked.sort_unstable();
            out.push(ranked.len() as u32);
            for (a, b) in ranked {
                out.push(a);
                out.push(b);
            }
        }
    }

    pub fn point_name(p: PointId) -> String {
        if p == BASE {
            "0".to_string()
        } else {
            format!("p{p}")
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.order.iter().map(|p| Diagram::point_name(*p)).collect();
        writeln!(f, "chain: {}", chain.join(" < "))?;
        for (g, pairs) in self.generators.iter().zip(&self.maps) {
            let mut sorted = pairs.clone();
            sorted.sort_by_key(|(a, _)| self.rank(*a));
            let arrows: Vec<String> = sorted
                .iter()
                .map(|(a, b)| format!("{} -> {}", Diagram::point_name(*a), Diagram::point_name(*b)))
                .collect();
            writeln!(f, "{g}: {}", arrows.join(", "))?;
        }
        Ok(())
    }
}
