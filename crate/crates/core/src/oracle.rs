//! Brute-force reference answers: filter the points inside the query and run
//! patience sort. Independent of `geom` and of every technique module.

use crate::error::Result;
use crate::instance::{classic_lis, ColorId, Instance, LisAnswer, Point, Query, RankBox};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub answer: LisAnswer,
    /// Colored instances: the optimal length of every color present in the
    /// query, by color id.
    pub per_color: Vec<(ColorId, usize)>,
}

fn inside<'a>(instance: &'a Instance, rb: &RankBox) -> impl Iterator<Item = Point> + 'a {
    let rb = *rb;
    instance.points()[rb.x1 as usize - 1..rb.x2 as usize]
        .iter()
        .copied()
        .filter(move |p| rb.contains(*p))
}

/// Uncolored answer in rank space.
pub fn oracle_box(instance: &Instance, rb: Option<&RankBox>) -> LisAnswer {
    match rb {
        None => LisAnswer::empty(),
        Some(rb) => {
            let pts: Vec<Point> = inside(instance, rb).collect();
            classic_lis(&pts)
        }
    }
}

/// Colored answer in rank space. Ties go to the smallest color id.
pub fn oracle_colored_box(instance: &Instance, rb: Option<&RankBox>) -> OracleAnswer {
    let Some(rb) = rb else {
        return OracleAnswer {
            answer: LisAnswer::empty(),
            per_color: Vec::new(),
        };
    };
    let mut buckets: Vec<Vec<Point>> = vec![Vec::new(); instance.color_count()];
    for p in inside(instance, rb) {
        buckets[instance.color_of(p.x).unwrap() as usize].push(p);
    }
    let mut best = LisAnswer::empty();
    let mut per_color = Vec::new();
    for (c, pts) in buckets.iter().enumerate() {
        if pts.is_empty() {
            continue;
        }
        let mut ans = classic_lis(pts);
        ans.color = Some(c as ColorId);
        per_color.push((c as ColorId, ans.length));
        if ans.length > best.length {
            best = ans;
        }
    }
    OracleAnswer {
        answer: best,
        per_color,
    }
}

pub fn oracle_range_lis(instance: &Instance, q: &Query) -> Result<OracleAnswer> {
    let rb = instance.rank_box(q)?;
    Ok(OracleAnswer {
        answer: oracle_box(instance, rb.as_ref()),
        per_color: Vec::new(),
    })
}

pub fn oracle_colored_range_lis(instance: &Instance, q: &Query) -> Result<OracleAnswer> {
    let rb = instance.rank_box(q)?;
    Ok(oracle_colored_box(instance, rb.as_ref()))
}
