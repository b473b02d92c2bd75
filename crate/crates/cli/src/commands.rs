use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use tightcheck::bounds::{
    avg_chi_formula, avg_f_formula, bound_table, cyclic_fvector, format_rational, gale_cyclic_boundary,
    sweep_identities, tightness_bound, tightness_bound_exact,
};
use tightcheck::complex::{bits, format_degree_sequence, Mask};
use tightcheck::homology::{betti, is_tight_exhaustive, PrimeField};
use tightcheck::search::{annotate, is_tight_bd, search_tight_3manifolds, sigma0_distribution};
use tightcheck::slicing::{all_bipartitions, all_rsl_perfect, average_slicing_stats, Slicer};
use tightcheck::spheres::{enumerate_spheres, SphereCatalog, SphereRecord};
use tightcheck::SimplicialComplex;

use crate::output::{read, write_atomic, yes_no};
use crate::{Command, TightMode};

pub fn run(cmd: Command) -> Result<()> {
    let out = match cmd {
        Command::Analyze { file } => analyze(&load(&file)?)?,
        Command::Tight { file, mode, characteristic } => tight(&load(&file)?, mode, characteristic)?,
        Command::Slicings { file, k, all, avg: _ } => slicings(&load(&file)?, k, all)?,
        Command::Bound { table, ditto, ell, n } => bound(table, ditto, ell, n)?,
        Command::Cyclic { ell, n, oracle } => cyclic(ell, n, oracle)?,
        Command::Identities { sweep } => identities(sweep[0], sweep[1])?,
        Command::Spheres { n, out } => {
            let cat = enumerate_spheres(n)?;
            write_atomic(&out, &cat.to_text())?;
            format!("{} spheres with {} vertices written to {}\n", cat.len(), n, out.display())
        }
        Command::Sigma { catalog, distribution } => sigma(&catalog, distribution)?,
        Command::Tk { catalog, k } => tk(&catalog, k)?,
        Command::Search { beta1, report } => {
            let r = search_tight_3manifolds(beta1)?;
            if let Some(path) = report {
                write_atomic(&path, &r.to_tsv())?;
            }
            r.summary()
        }
    };
    print!("{out}");
    Ok(())
}

fn load(path: &Path) -> Result<SimplicialComplex> {
    SimplicialComplex::parse_facet_list(&read(path)?).with_context(|| format!("invalid complex in {}", path.display()))
}

fn labels(c: &SimplicialComplex, w: Mask) -> String {
    bits(w).map(|v| c.labels()[v].to_string()).collect::<Vec<_>>().join(",")
}

fn analyze(c: &SimplicialComplex) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "vertices\t{}", c.vertex_count())?;
    writeln!(s, "facets\t{}", c.facets().len())?;
    writeln!(s, "dimension\t{}", c.dimension().map_or("-".into(), |d| d.to_string()))?;
    writeln!(s, "pure\t{}", yes_no(c.is_pure()))?;
    writeln!(s, "f_vector\t{}", c.f_vector())?;
    writeln!(s, "euler_characteristic\t{}", c.euler_characteristic())?;
    writeln!(s, "betti_F2\t{}", betti(c, PrimeField::F2))?;
    writeln!(s, "connected\t{}", yes_no(c.is_connected()))?;
    let neighbourly = (1..=c.vertex_count()).take_while(|&k| c.is_k_neighbourly(k)).last().unwrap_or(0);
    writeln!(s, "neighbourly\t{neighbourly}")?;
    let manifold = match c.dimension() {
        Some(2) if c.is_pure() => {
            if c.is_closed_surface()? {
                "closed surface".to_string()
            } else {
                "no".to_string()
            }
        }
        Some(3) if c.is_pure() => match c.three_manifold_defect()? {
            None => "closed 3-manifold".to_string(),
            Some(why) => format!("no: {why}"),
        },
        _ => "not checked (only pure 2- and 3-complexes)".to_string(),
    };
    writeln!(s, "manifold\t{manifold}")?;
    if c.is_closed_pseudomanifold() {
        writeln!(s, "orientable\t{}", yes_no(c.is_orientable()?))?;
    }
    writeln!(s, "signature\t{}", c.canonical_signature())?;
    Ok(s)
}

fn tight(c: &SimplicialComplex, mode: TightMode, p: u32) -> Result<String> {
    let field = PrimeField::new(p)?;
    let verdict = match mode {
        TightMode::Exhaustive => is_tight_exhaustive(c, field)?,
        TightMode::Bd => is_tight_bd(c, field)?,
        TightMode::Rsl => all_rsl_perfect(c, field)?,
    };
    Ok(format!("tight\t{}\n", yes_no(verdict)))
}

fn slicings(c: &SimplicialComplex, k: usize, all: bool) -> Result<String> {
    let slicer = Slicer::new(c)?;
    let n = c.vertex_count();
    ensure!(k >= 1 && k < n, "--k must lie in 1..={} for a complex with {n} vertices", n - 1);
    let mut s = String::new();
    if all {
        writeln!(s, "lower\tf_vector\teuler_characteristic\tcomponents\torientable\tbetti_F2")?;
        for w in all_bipartitions(c).filter(|w| w.count_ones() as usize == k) {
            let surf = slicer.surface(w)?;
            writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}",
                labels(c, w),
                surf.f_vector(),
                surf.euler_characteristic(),
                surf.component_count(),
                yes_no(surf.is_orientable()),
                surf.betti(PrimeField::F2)
            )?;
        }
        return Ok(s);
    }
    let (avg_f, avg_chi) = average_slicing_stats(c, k)?;
    let f = c.f_vector();
    writeln!(s, "quantity\tbrute_force\tformula\tagree")?;
    for (i, a) in avg_f.iter().enumerate() {
        let formula = avg_f_formula(&f, n as u64, k as u64, i)?;
        writeln!(s, "f{i}\t{}\t{}\t{}", format_rational(a), format_rational(&formula), yes_no(*a == formula))?;
    }
    let formula = avg_chi_formula(&f, n as u64, k as u64)?;
    writeln!(
        s,
        "euler_characteristic\t{}\t{}\t{}",
        format_rational(&avg_chi),
        format_rational(&formula),
        yes_no(avg_chi == formula)
    )?;
    Ok(s)
}

fn bound(table: bool, ditto: bool, ell: Option<u32>, n: Option<u32>) -> Result<String> {
    if table {
        let t = bound_table(15, 10)?;
        return Ok(if ditto { t.to_tsv_ditto() } else { t.to_tsv() });
    }
    let (ell, n) = match (ell, n) {
        (Some(l), Some(n)) => (l, n),
        _ => bail!("give --table or both --ell and --n"),
    };
    Ok(format!(
        "bound\t{}\nexact\t{}\n",
        tightness_bound(ell, n)?,
        format_rational(&tightness_bound_exact(ell, n)?)
    ))
}

fn cyclic(ell: u32, n: u32, oracle: bool) -> Result<String> {
    let f = cyclic_fvector(ell, n)?;
    let mut s = String::new();
    if !oracle {
        writeln!(s, "dim\tfaces")?;
        for (i, x) in f.0.iter().enumerate() {
            writeln!(s, "{i}\t{x}")?;
        }
        return Ok(s);
    }
    let g = gale_cyclic_boundary(2 * ell + 2, n)?.f_vector();
    writeln!(s, "dim\tfaces\tgale\tagree")?;
    for (i, x) in f.0.iter().enumerate() {
        let y = g.0.get(i).copied().unwrap_or(0);
        writeln!(s, "{i}\t{x}\t{y}\t{}", yes_no(*x == y))?;
    }
    ensure!(f == g, "formula and Gale-evenness oracle disagree:\n{s}");
    Ok(s)
}

fn identities(ell_max: u32, n_max: u32) -> Result<String> {
    let sweep = sweep_identities(ell_max, n_max as i64);
    let mut s = String::from("identity\tchecked\tfailures\n");
    let parts = [
        ("row_sum", &sweep.row_sums),
        ("column_sum", &sweep.column_sums),
        ("double_sum", &sweep.double_sum),
        ("vandermonde_cut", &sweep.vandermonde_cut),
        ("cyclic_sum", &sweep.cyclic_sum),
    ];
    for (name, r) in parts {
        writeln!(s, "{name}\t{}\t{}", r.checked, r.failures.len())?;
    }
    if !sweep.passed() {
        let failures: Vec<&String> = parts.iter().flat_map(|(_, r)| &r.failures).take(20).collect();
        bail!("identity failures:\n{s}first failures: {failures:?}");
    }
    Ok(s)
}

fn load_catalog(path: &Path, ks: &[u32]) -> Result<Vec<SphereRecord>> {
    let cat = SphereCatalog::parse(&read(path)?).with_context(|| format!("invalid catalog {}", path.display()))?;
    let mut records = cat.records;
    annotate(&mut records, ks)?;
    records.sort_by(|a, b| a.sigma0.cmp(&b.sigma0).then_with(|| a.signature.cmp(&b.signature)));
    Ok(records)
}

fn sigma(path: &Path, distribution: bool) -> Result<String> {
    let records = load_catalog(path, &[])?;
    let mut s = String::new();
    if distribution {
        writeln!(s, "sigma0\tcount")?;
        for (v, c) in sigma0_distribution(&records) {
            writeln!(s, "{}\t{c}", format_rational(&v))?;
        }
    } else {
        writeln!(s, "signature\tsigma0\tdegrees")?;
        for r in &records {
            let v = r.sigma0.as_ref().expect("annotated");
            writeln!(s, "{}\t{}\t{}", r.signature, format_rational(v), format_degree_sequence(&r.degree_sequence))?;
        }
    }
    Ok(s)
}

fn tk(path: &Path, k: u32) -> Result<String> {
    let records = load_catalog(path, &[k])?;
    let total = records.len();
    let passing: Vec<&SphereRecord> = records.iter().filter(|r| r.tk_flags[&k]).collect();
    let mut s = String::from("signature\tsigma0\tdegrees\tstacked\n");
    for r in &passing {
        let v = r.sigma0.as_ref().expect("annotated");
        writeln!(
            s,
            "{}\t{}\t{}\t{}",
            r.signature,
            format_rational(v),
            format_degree_sequence(&r.degree_sequence),
            yes_no(r.stacked)
        )?;
    }
    let mut values: Vec<_> = passing.iter().map(|r| r.sigma0.clone()).collect();
    values.dedup();
    eprintln!("{} of {total} spheres have property T_{k} ({} distinct sigma0 values)", passing.len(), values.len());
    Ok(s)
}
