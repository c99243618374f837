use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cli::{
    decide, decide_closed, rationals, run_appendix, to_i64_rows, AppendixOptions, AppendixReport, CliError, Injection,
    Result, Verdict,
};
use exactmat::{smith_normal_form, IntMatrix};
use gmforms::{SurfaceInvariants, Z4QuadForm, Z4};
use invariants::{
    boundary_universal_cover, homology_boundary_exterior, homology_branched_cover, homology_circle_bundle,
    homology_circle_bundle_cover, homology_exterior, zz2_homology_exterior, FinAbGroup, HomologyTable,
};
use linkforms::{baut, boundary_form, n_p, nikulin_check, BautOptions, Exec, NikulinVerdict, DEFAULT_GROUP_CAP};
use serde_json::{json, Value};
use zforms::{aut_group_with, hyperbolic, theta_ab, QuadFormZ};

#[derive(Parser)]
#[command(name = "z2surf", version, about = "Unknotting decisions for nonorientable surfaces with knot group Z/2")]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormInput {
    /// Quadratic form representative, rows separated by '/', e.g. "2 2 / 0 1".
    #[arg(long)]
    theta: String,
    /// Use twice the given form.
    #[arg(long)]
    doubled: bool,
}

impl FormInput {
    fn form(&self) -> Result<QuadFormZ> {
        let theta = QuadFormZ::new(IntMatrix::parse_inline(&self.theta)?)?;
        Ok(if self.doubled { theta.scale(2) } else { theta })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form and cokernel of an integer matrix.
    Snf {
        /// Rows separated by '/', e.g. "2 4 / 6 8".
        #[arg(long)]
        matrix: String,
    },
    /// Discriminant group and quadratic linking form of a nondegenerate form.
    BoundaryForm {
        #[command(flatten)]
        input: FormInput,
    },
    /// Automorphism group of a definite form.
    Aut {
        #[command(flatten)]
        input: FormInput,
        /// Print every automorphism.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// Orbit set of boundary automorphisms modulo those induced by the form.
    Baut {
        #[command(flatten)]
        input: FormInput,
        /// Largest discriminant group to enumerate.
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        cap: usize,
        #[arg(long)]
        sequential: bool,
    },
    /// Nikulin's surjectivity criterion for the doubled standard form.
    Nikulin {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Add a hyperbolic plane before doubling.
        #[arg(long)]
        stabilized: bool,
    },
    /// Gauss sum and Brown invariant of a Z/4-valued quadratic refinement.
    Brown {
        /// Values on the basis, comma separated, e.g. "1,1,3".
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        q: Vec<i64>,
        /// Bilinear form mod 2, rows separated by '/'; the identity by default.
        #[arg(long)]
        bilinear: Option<String>,
    },
    /// Homology of the spaces attached to a surface.
    Invariants {
        #[arg(long)]
        h: usize,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        /// Torsion of H1 of the double branched cover of the boundary knot, comma separated.
        #[arg(long, value_delimiter = ',')]
        h1_cover: Vec<u64>,
    },
    /// Which unknotting theorem applies.
    Decide {
        #[arg(long)]
        h: u32,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        sigma_k: i64,
        #[arg(long, default_value_t = 1)]
        det_k: u64,
        #[arg(long)]
        stabilized: bool,
        /// Closed surface in the 4-sphere; ignores the knot data.
        #[arg(long, conflicts_with_all = ["sigma_k", "det_k"])]
        closed: bool,
        /// Largest rank of a definite form attempted by enumeration.
        #[arg(long, default_value_t = 5)]
        definite_bound: usize,
    },
    /// Recompute and check the reference values for genus two and three.
    ReproduceAppendix {
        #[arg(long, default_value_t = 5)]
        definite_bound: usize,
        /// Corrupt one reference value to exercise the mismatch path.
        #[arg(long)]
        inject_mismatch: bool,
    },
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn print(json: bool, value: &Value, human: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
    } else {
        print!("{}", human());
    }
}

fn matrix_lines(m: &IntMatrix) -> String {
    format!("{m}\n")
}

fn snf(json: bool, matrix: &str) -> Result<()> {
    let m = IntMatrix::parse_inline(matrix)?;
    let s = smith_normal_form(&m);
    let cok = exactmat::cokernel_invariants(&m);
    let diag: Vec<String> = s.diagonal().iter().map(ToString::to_string).collect();
    let torsion: Vec<String> = cok.torsion.iter().map(ToString::to_string).collect();
    let value = json!({
        "diagonal": diag,
        "u": s.u.to_nested(),
        "v": s.v.to_nested(),
        "cokernel": { "free_rank": cok.free_rank, "torsion": torsion },
    });
    print(json, &value, || {
        format!(
            "invariant factors: {}\ncokernel: free rank {}, torsion [{}]\nU =\n{}V =\n{}",
            diag.join(" "),
            cok.free_rank,
            torsion.join(", "),
            matrix_lines(&s.u),
            matrix_lines(&s.v)
        )
    });
    Ok(())
}

fn boundary(json: bool, input: &FormInput) -> Result<()> {
    let theta = input.form()?;
    let b = boundary_form(&theta)?;
    let form = b.form();
    let nu = rationals(&form.nu_on_generators());
    let pairing: Vec<Vec<String>> = (0..form.rank())
        .map(|i| (0..form.rank()).map(|j| form.b(&form.unit(i), &form.unit(j)).to_string()).collect())
        .collect();
    let value = json!({
        "factors": form.factors(),
        "order": form.order(),
        "nu_on_generators": nu,
        "b_on_generators": pairing,
        "generator_lifts": b.lifts().to_nested(),
    });
    print(json, &value, || {
        let mut s = format!("form {theta}\n{form}\nb on generators:\n");
        for row in &pairing {
            s.push_str(&format!("  {}\n", row.join("  ")));
        }
        s.push_str(&format!("generator lifts (columns):\n{}", matrix_lines(b.lifts())));
        s
    });
    Ok(())
}

fn aut(json: bool, input: &FormInput, list: bool, sequential: bool) -> Result<()> {
    let theta = input.form()?;
    let group = aut_group_with(&theta.symmetrize(), exec(sequential))?;
    let mats: Vec<Vec<Vec<i64>>> =
        if list { group.iter().map(to_i64_rows).collect::<Result<_>>()? } else { Vec::new() };
    let value = json!({ "order": group.len(), "elements": mats });
    print(json, &value, || {
        let mut s = format!("|Aut| = {}\n", group.len());
        if list {
            for g in &group {
                s.push_str(&matrix_lines(g));
            }
        }
        s
    });
    Ok(())
}

fn baut_cmd(json: bool, input: &FormInput, cap: usize, sequential: bool) -> Result<()> {
    let theta = input.form()?;
    let r = baut(&theta, BautOptions { cap, exec: exec(sequential) })?;
    let form = r.boundary.form();
    let reps: Vec<Vec<Vec<u64>>> = r.representatives.iter().map(|a| a.images().to_vec()).collect();
    let value = json!({
        "factors": form.factors(),
        "nu_on_generators": rationals(&form.nu_on_generators()),
        "aut_theta_order": r.aut_theta_order,
        "image_order": r.image_order(),
        "aut_boundary_order": r.aut_link_order(),
        "orbit_count": r.orbit_count,
        "trivial": r.trivial(),
        "representatives": reps,
    });
    print(json, &value, || {
        let mut s = format!(
            "{form}\n|Aut(θ)|        {}\n|Im ∂|          {}\n|Aut(∂θ)|       {}\norbits          {}\n",
            r.aut_theta_order,
            r.image_order(),
            r.aut_link_order(),
            r.orbit_count
        );
        s.push_str(if r.trivial() { "bAut is trivial\n" } else { "bAut is nontrivial; representatives:\n" });
        if !r.trivial() {
            for rep in &reps {
                s.push_str(&format!("  generator images {rep:?}\n"));
            }
        }
        s
    });
    Ok(())
}

fn nikulin(json: bool, a: usize, b: usize, stabilized: bool) -> Result<()> {
    let mut theta = theta_ab(a, b)?;
    if stabilized {
        theta = theta.direct_sum(&hyperbolic(1));
    }
    let doubled = theta.scale(2);
    let factors = boundary_form(&doubled)?.form().factors().to_vec();
    let mut primes: Vec<u64> = Vec::new();
    for &d in &factors {
        let mut d = d;
        let mut p = 2;
        while d > 1 {
            if d % p == 0 {
                if !primes.contains(&p) {
                    primes.push(p);
                }
                d /= p;
            } else {
                p += 1;
            }
        }
    }
    primes.sort_unstable();
    let counts: Vec<(u64, usize)> = primes.iter().map(|&p| Ok((p, n_p(&factors, p)?))).collect::<Result<_>>()?;
    let verdict = nikulin_check(&doubled)?;
    let (label, why) = match &verdict {
        NikulinVerdict::Surjective => ("Surjective", None),
        NikulinVerdict::NotApplicable(w) => ("NotApplicable", Some(w.clone())),
    };
    let value = json!({
        "rank": doubled.rank(),
        "factors": factors,
        "n_p": counts.iter().map(|&(p, n)| json!({ "p": p, "n": n })).collect::<Vec<_>>(),
        "verdict": label,
        "reason": why,
    });
    print(json, &value, || {
        let mut s = format!("rank {}, discriminant factors {:?}\n", doubled.rank(), factors);
        for (p, n) in &counts {
            s.push_str(&format!("  n_{p} = {n}\n"));
        }
        s.push_str(label);
        if let Some(w) = &why {
            s.push_str(&format!(": {w}"));
        }
        s.push('\n');
        s
    });
    Ok(())
}

fn brown(json: bool, q: &[i64], bilinear: Option<&str>) -> Result<()> {
    let values: Vec<Z4> = q.iter().map(|&v| Z4::new(v)).collect();
    let form = match bilinear {
        None => Z4QuadForm::standard(&values)?,
        Some(text) => {
            let m = IntMatrix::parse_inline(text)?;
            let bits: Vec<Vec<bool>> =
                to_i64_rows(&m)?.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
            Z4QuadForm::new(&bits, &values)?
        }
    };
    let g = form.gauss_sum()?;
    let beta = form.brown_kervaire()?;
    let value = json!({ "dim": form.dim(), "gauss_sum": { "re": g.re, "im": g.im }, "brown": beta.value() });
    print(json, &value, || format!("Gauss sum {} + {}i\nβ = {} in Z/8\n", g.re, g.im, beta.value()));
    Ok(())
}

fn table_json(t: &HomologyTable) -> Value {
    t.iter().map(|(d, g)| (d.to_string(), Value::String(g.to_string()))).collect::<serde_json::Map<_, _>>().into()
}

fn table_text(title: &str, t: &HomologyTable) -> String {
    let cells: Vec<String> = t.iter().map(|(d, g)| format!("H{d} = {g}")).collect();
    format!("{title:<34} {}\n", cells.join(", "))
}

fn invariants_cmd(json: bool, h: usize, e: i64, h1_cover: &[u64]) -> Result<()> {
    let h1 = FinAbGroup::new(0, h1_cover);
    let mut rows: Vec<(&str, HomologyTable)> = vec![
        ("circle bundle", homology_circle_bundle(h, e, false)?),
        ("punctured circle bundle", homology_circle_bundle(h, e, true)?),
        ("boundary of exterior", homology_boundary_exterior(h)?),
        ("exterior", homology_exterior(h)?),
        ("double branched cover", homology_branched_cover(h)?),
    ];
    let even = e % 2 == 0;
    if even {
        rows.insert(1, ("double cover of circle bundle", homology_circle_bundle_cover(h, e, false)?));
        rows.push(("double cover of boundary", boundary_universal_cover(h, e, &h1)?));
    }
    let zz2 = zz2_homology_exterior(h)?;
    let value = json!({
        "tables": rows.iter().map(|(n, t)| (n.to_string(), table_json(t))).collect::<serde_json::Map<_, _>>(),
        "exterior_group_ring": zz2.iter().map(|(d, m)| (d.to_string(), Value::String(m.to_string()))).collect::<serde_json::Map<_, _>>(),
        "double_cover_euler_number": if even { json!(e / 2) } else { Value::Null },
    });
    print(json, &value, || {
        let mut s: String = rows.iter().map(|(n, t)| table_text(n, t)).collect();
        let cells: Vec<String> = zz2.iter().map(|(d, m)| format!("H{d} = {m}")).collect();
        s.push_str(&format!("{:<34} {}\n", "exterior, group ring coefficients", cells.join(", ")));
        if !even {
            s.push_str("(odd e: the double cover tables need an even Euler number)\n");
        }
        s
    });
    Ok(())
}

fn verdict_text(v: &Verdict) -> String {
    let d = &v.details;
    let theorem = serde_json::to_value(v.applicable_theorem).expect("serialisable");
    let mut s = format!("applicable theorem  {}\n", theorem.as_str().unwrap_or_default());
    if let Some(route) = v.route {
        s.push_str(&format!(
            "route               {}\n",
            serde_json::to_value(route).expect("serialisable").as_str().unwrap_or_default()
        ));
    }
    if let Some(reason) = &v.reason {
        s.push_str(&format!("reason              {reason}\n"));
    }
    s.push_str(&format!(
        "σ(Σ₂F) = {}, (a, b) = ({}, {}), extremal: {}, stabilised: {}\n",
        d.sigma, d.a, d.b, d.extremal, d.stabilized
    ));
    if let Some(theta) = &d.theta {
        s.push_str(&format!("θ = {theta:?}\n"));
    }
    if let Some(l) = &d.linking_form {
        s.push_str(&format!(
            "linking form of 2θ: factors {:?}, ν on generators ({})\n",
            l.factors,
            l.nu_on_generators.join(", ")
        ));
    }
    if let Some(k) = d.orbit_count {
        s.push_str(&format!("orbit count {k}\n"));
    }
    if let Some(note) = &d.note {
        s.push_str(&format!("note: {note}\n"));
    }
    s
}

fn appendix_text(r: &AppendixReport) -> String {
    let mut s = String::new();
    for section in &r.sections {
        s.push_str(&format!("== {} ==\n", section.title));
        for c in &section.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            s.push_str(&format!("{mark} {:<46} {}\n", c.name, c.observed));
            if !c.ok {
                s.push_str(&format!("     expected {}\n", c.expected));
            }
        }
    }
    for n in &r.notices {
        s.push_str(&format!("notice: {n}\n"));
    }
    s
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Snf { matrix } => snf(json, &matrix),
        Command::BoundaryForm { input } => boundary(json, &input),
        Command::Aut { input, list, sequential } => aut(json, &input, list, sequential),
        Command::Baut { input, cap, sequential } => baut_cmd(json, &input, cap, sequential),
        Command::Nikulin { a, b, stabilized } => nikulin(json, a, b, stabilized),
        Command::Brown { q, bilinear } => brown(json, &q, bilinear.as_deref()),
        Command::Invariants { h, e, h1_cover } => invariants_cmd(json, h, e, &h1_cover),
        Command::Decide { h, e, sigma_k, det_k, stabilized, closed, definite_bound } => {
            let v = if closed {
                decide_closed(h, e, stabilized, definite_bound)?
            } else {
                decide(&SurfaceInvariants::new(h, e, sigma_k, det_k)?, stabilized, definite_bound)?
            };
            print(json, &serde_json::to_value(&v).expect("serialisable"), || verdict_text(&v));
            Ok(())
        }
        Command::ReproduceAppendix { definite_bound, inject_mismatch } => {
            let inject = inject_mismatch.then_some(Injection::WrongNu);
            let r = run_appendix(AppendixOptions { definite_bound, inject })?;
            print(json, &serde_json::to_value(&r).expect("serialisable"), || appendix_text(&r));
            if r.all_ok() {
                Ok(())
            } else {
                Err(CliError::MismatchDetected(r.diff()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
