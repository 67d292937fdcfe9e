use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::report::finite_index;
use super::{build_attractor, AttractorCase};
use crate::dance::{analyze_dance, DanceData};
use crate::error::Result;
use crate::measure::Distribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Period {
    Finite(BigInt),
    Undefined,
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Finite(s) => write!(f, "{s}"),
            Period::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub irreducible: Verdict,
    pub aperiodic: Verdict,
    pub period: Period,
    pub dance_cosets: String,
    /// Why a verdict is `No` or `Undetermined`.
    pub reason: Option<String>,
}

fn describe_cosets(data: &DanceData) -> String {
    format!(
        "G_p = {} of index {}; at step n the walk lies in G_p + n*{}",
        data.walk_subgroup,
        data.index(),
        data.base_point
    )
}

/// Irreducibility and period. Finite groups are decided exactly by breadth-first
/// search on the transition graph. Infinite groups are decided only when the
/// walk subgroup forces an answer or the walk has zero mean.
pub fn classify(p: &Distribution) -> Result<Classification> {
    let data = analyze_dance(p)?;
    let dance_cosets = describe_cosets(&data);
    if p.group().is_finite() {
        return Ok(classify_finite(p, dance_cosets));
    }

    let undefined = |irreducible, reason: &str| Classification {
        irreducible,
        aperiodic: Verdict::Undetermined,
        period: Period::Undefined,
        dance_cosets: dance_cosets.clone(),
        reason: Some(reason.to_string()),
    };
    let index = data.index();
    let Some(s) = finite_index(&index) else {
        return Ok(undefined(
            Verdict::No,
            "[G:G_p] is infinite, so the walk's image in G/G_p moves deterministically and never returns",
        ));
    };

    let g = data.group();
    let s_small = s.to_u64().unwrap_or(u64::MAX);
    let mut order = 1u64;
    let mut multiple = data.base_point.clone();
    while order < s_small && !data.walk_subgroup.contains(&multiple)? {
        multiple = g.add(&multiple, &data.base_point)?;
        order += 1;
    }
    if order < s_small {
        return Ok(undefined(
            Verdict::No,
            "the support generates a proper subgroup of G",
        ));
    }

    let attractor = build_attractor(p)?;
    let zero_mean = match &attractor.case {
        AttractorCase::Diffusive { moments, .. } => moments.mean_is_zero(),
        AttractorCase::D0 => false,
    };
    if !zero_mean {
        return Ok(undefined(
            Verdict::Undetermined,
            "nonzero mean: reachability is not decided by the walk subgroup alone",
        ));
    }
    Ok(Classification {
        irreducible: Verdict::Yes,
        aperiodic: if s.is_one() { Verdict::Yes } else { Verdict::No },
        period: Period::Finite(s.clone()),
        dance_cosets,
        reason: None,
    })
}

fn classify_finite(p: &Distribution, dance_cosets: String) -> Classification {
    let g = p.group();
    let total = g.torsion_order().to_usize().expect("finite group fits in memory");
    let steps: Vec<_> = p.support().cloned().collect();
    let mut level: Vec<Option<u64>> = vec![None; total];
    let zero = g.zero();
    level[g.torsion_index(&zero)] = Some(0);
    let mut queue = VecDeque::from([zero]);
    let mut period = 0u64;
    let mut reached = 1usize;
    while let Some(u) = queue.pop_front() {
        let lu = level[g.torsion_index(&u)].expect("queued vertices are labelled");
        for st in &steps {
            let v = g.add_unchecked(&u, st);
            let iv = g.torsion_index(&v);
            match level[iv] {
                None => {
                    level[iv] = Some(lu + 1);
                    reached += 1;
                    queue.push_back(v);
                }
                Some(lv) => period = period.gcd(&(lu + 1).abs_diff(lv)),
            }
        }
    }

    if reached < total {
        return Classification {
            irreducible: Verdict::No,
            aperiodic: Verdict::Undetermined,
            period: Period::Undefined,
            dance_cosets,
            reason: Some(format!(
                "only {reached} of {total} states are reachable from 0; period is defined only for irreducible walks"
            )),
        };
    }
    Classification {
        irreducible: Verdict::Yes,
        aperiodic: if period == 1 { Verdict::Yes } else { Verdict::No },
        period: Period::Finite(BigInt::from(period)),
        dance_cosets,
        reason: None,
    }
}
