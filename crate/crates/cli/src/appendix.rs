use std::collections::BTreeSet;

use exactmat::{BigRational, IntMatrix};
use linkforms::{automorphisms, baut, boundary_form, boundary_image, isometries, BautOptions, LinkAut, SearchOptions};
use serde::{Deserialize, Serialize};
use zforms::{aut_group, is_isometric, x_form, QuadFormZ};

use crate::{rationals, to_i64_rows, CliError, Result};

/// Deliberate corruption of one reference value, to exercise the mismatch path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Injection {
    /// Expect the wrong value of `ν` on the order-8 generator in rank three.
    WrongNu,
}

#[derive(Clone, Copy, Debug)]
pub struct AppendixOptions {
    /// Ranks above this are skipped with a notice.
    pub definite_bound: usize,
    pub inject: Option<Injection>,
}

impl Default for AppendixOptions {
    fn default() -> Self {
        Self { definite_bound: 5, inject: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub sections: Vec<Section>,
    pub notices: Vec<String>,
}

impl AppendixReport {
    pub fn mismatches(&self) -> impl Iterator<Item = (&Section, &Check)> {
        self.sections.iter().flat_map(|s| s.checks.iter().filter(|c| !c.ok).map(move |c| (s, c)))
    }

    pub fn all_ok(&self) -> bool {
        self.mismatches().next().is_none()
    }

    /// One line per failed check.
    pub fn diff(&self) -> String {
        self.mismatches()
            .map(|(s, c)| format!("[{}] {}: expected {}, observed {}", s.title, c.name, c.expected, c.observed))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, observed: T) {
        self.0.push(Check {
            name: name.into(),
            ok: expected == observed,
            expected: format!("{expected:?}"),
            observed: format!("{observed:?}"),
        });
    }
}

fn q(rows: &[&[i64]]) -> Result<QuadFormZ> {
    Ok(QuadFormZ::new(IntMatrix::from_rows(rows))?)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Generator images with integer coordinates, for comparing against lists.
fn images(a: &LinkAut) -> Vec<Vec<u64>> {
    a.images().to_vec()
}

/// Runs every appendix computation and records the comparisons, without
/// failing on a mismatch.
pub fn run_appendix(opts: AppendixOptions) -> Result<AppendixReport> {
    let mut report = AppendixReport::default();
    for (rank, section) in [(2, rank_two as fn(AppendixOptions) -> Result<Section>), (3, rank_three)] {
        if rank > opts.definite_bound {
            report.notices.push(format!(
                "skipped h={rank}: definite rank {rank} exceeds the definite bound {}",
                opts.definite_bound
            ));
        } else {
            report.sections.push(section(opts)?);
        }
    }
    Ok(report)
}

/// As [`run_appendix`], but any mismatch is an error carrying the diff.
pub fn reproduce_appendix(opts: AppendixOptions) -> Result<AppendixReport> {
    let report = run_appendix(opts)?;
    if report.all_ok() {
        Ok(report)
    } else {
        Err(CliError::MismatchDetected(report.diff()))
    }
}

fn rank_two(_: AppendixOptions) -> Result<Section> {
    let mut c = Checks(Vec::new());
    let psi = x_form(2).scale(2);
    c.eq("doubled form", vec![vec![4, 4], vec![0, 2]], to_i64_rows(psi.rep())?);
    let change = IntMatrix::from_rows(&[[1, 0], [-1, 1]]);
    let diagonal = q(&[&[2, 0], &[0, 2]])?;
    c.eq(
        "after e1 -> e1 - e2, up to B - B^T",
        to_i64_rows(&diagonal.canonical())?,
        to_i64_rows(&psi.transform(&change)?.canonical())?,
    );

    let b = boundary_form(&diagonal)?;
    let form = b.form();
    c.eq("discriminant group", vec![4, 4], form.factors().to_vec());
    let all_match = form.elements().all(|x| {
        let (x1, x2) = (x[0] as i64, x[1] as i64);
        let expected = rat(x1 * x1 + x2 * x2, 8);
        let frac = &expected - expected.floor();
        form.nu(&x) == frac
    });
    c.eq("nu(x) = (x1^2 + x2^2)/8 on all 16 classes", true, all_match);
    c.eq("b on generators", rationals(&[rat(1, 4), rat(0, 1), rat(0, 1), rat(1, 4)]), {
        let g = |i| form.unit(i);
        rationals(&[form.b(&g(0), &g(0)), form.b(&g(0), &g(1)), form.b(&g(1), &g(0)), form.b(&g(1), &g(1))])
    });

    let signed_permutations: BTreeSet<Vec<i64>> = [[1, 0, 0, 1], [0, 1, 1, 0]]
        .iter()
        .flat_map(|p| [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(s, t)| vec![s * p[0], s * p[1], t * p[2], t * p[3]]))
        .collect();
    let auts: BTreeSet<Vec<i64>> =
        aut_group(&diagonal.symmetrize())?.iter().filter_map(IntMatrix::to_i64_vec).collect();
    c.eq("Aut is the signed permutations", signed_permutations, auts);

    let r = baut(&psi, BautOptions::default())?;
    c.eq("|Aut(theta)|", 8, r.aut_theta_order);
    c.eq("|Im boundary|", 8, r.image_order());
    c.eq("|Aut(boundary)|", 8, r.aut_link_order());
    c.eq("orbit count", 1, r.orbit_count);
    Ok(Section { title: "h=2".into(), checks: c.0 })
}

fn rank_three(opts: AppendixOptions) -> Result<Section> {
    let mut c = Checks(Vec::new());
    let psi = x_form(3).scale(2);
    c.eq("doubled form", vec![vec![4, 4, 4], vec![0, 2, 2], vec![0, 0, 2]], to_i64_rows(psi.rep())?);
    let reduced = q(&[&[12, 32, -16], &[0, 22, -22], &[0, 0, 6]])?;
    c.eq(
        "reduced representative is isometric",
        true,
        is_isometric(&psi.symmetrize(), &reduced.symmetrize())?.is_some(),
    );

    let b = boundary_form(&reduced)?;
    let form = b.form();
    c.eq("discriminant group", vec![2, 2, 8], form.factors().to_vec());
    let top = match opts.inject {
        Some(Injection::WrongNu) => rat(3, 16),
        None => rat(11, 16),
    };
    c.eq(
        "nu on generators (Z/2, Z/2, Z/8)",
        rationals(&[rat(1, 2), rat(1, 2), top]),
        rationals(&form.nu_on_generators()),
    );
    let g = |i| form.unit(i);
    let pairing: Vec<BigRational> =
        (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| form.b(&g(i), &g(j))).collect();
    let half = rat(1, 2);
    let zero = rat(0, 1);
    let expected = [&zero, &half, &zero, &half, &zero, &zero, &zero, &zero, &rat(3, 8)].map(Clone::clone).to_vec();
    c.eq("b on generators", rationals(&expected), rationals(&pairing));

    let r = baut(&reduced, BautOptions::default())?;
    c.eq("|Aut(theta)|", 48, r.aut_theta_order);
    c.eq("|Im boundary|", 48, r.image_order());

    let (_, image) = boundary_image(&b)?;
    let top_unit = |a: &LinkAut| matches!(a.images()[2][2], 1 | 7);
    let x0: BTreeSet<Vec<Vec<u64>>> = image.iter().filter(|a| top_unit(a)).map(images).collect();
    c.eq("|X0| (order-8 generator to +-1 times itself)", 12, x0.len());
    c.eq("|Y0| (order-8 generator to +-3 times itself)", 36, image.len() - x0.len());
    // X0 acts by a sign on Z/8 and by GL2(F2) on the two Z/2 summands.
    let gl2: [[[u64; 2]; 2]; 6] =
        [[[1, 0], [0, 1]], [[1, 1], [0, 1]], [[0, 1], [1, 0]], [[0, 1], [1, 1]], [[1, 1], [1, 0]], [[1, 0], [1, 1]]];
    let listed: BTreeSet<Vec<Vec<u64>>> = gl2
        .iter()
        .flat_map(|m| {
            [1u64, 7].map(|s| {
                // Column j of the paper's block is the image of generator j.
                vec![vec![m[0][0], m[1][0], 0], vec![m[0][1], m[1][1], 0], vec![0, 0, s]]
            })
        })
        .collect();
    c.eq("X0 is the listed set", listed, x0);

    let loose = SearchOptions { check_b: false, ..SearchOptions::default() };
    c.eq("nu-only candidates", 192, isometries(form, form, loose)?.len());
    c.eq("|Aut(boundary)|", 48, automorphisms(form, SearchOptions::default())?.len());
    c.eq("|Aut(boundary)| from orbit search", 48, r.aut_link_order());
    c.eq("orbit count", 1, r.orbit_count);
    Ok(Section { title: "h=3".into(), checks: c.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_run_is_green() {
        let r = reproduce_appendix(AppendixOptions::default()).unwrap();
        assert!(r.notices.is_empty());
        assert_eq!(r.sections.len(), 2);
    }

    #[test]
    fn injected_value_is_reported() {
        let opts = AppendixOptions { inject: Some(Injection::WrongNu), ..AppendixOptions::default() };
        let Err(CliError::MismatchDetected(diff)) = reproduce_appendix(opts) else { panic!("expected a mismatch") };
        assert!(diff.contains("nu on generators"), "{diff}");
        assert_eq!(diff.lines().count(), 1);
    }

    #[test]
    fn low_bound_skips_rank_three() {
        let r = reproduce_appendix(AppendixOptions { definite_bound: 1, inject: None }).unwrap();
        assert!(r.notices.iter().any(|n| n.starts_with("skipped h=3")));
        assert!(r.sections.is_empty());
    }
}
