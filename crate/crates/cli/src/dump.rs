//! Plain-text dumps of intermediate objects.

use std::fmt::Write as _;

use irrepcount_core::count::{FiniteDimAlgebra, TraceFormReport};
use irrepcount_core::decide::Analysis;
use irrepcount_core::genmat::WordDisplay;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DumpKind {
    /// Generators of the relation ideal.
    Ideal,
    /// Reduced bases of the relation ideal and of J.
    Gb,
    /// Trace generators with their polynomials.
    Traces,
    /// The irreducibility set with the words that produced each member.
    Sset,
    /// Basis, structure constants and Gram matrix of the counting algebra.
    Algebra,
}

pub fn render(kind: DumpKind, a: &Analysis, algebra: Option<(&FiniteDimAlgebra, &TraceFormReport)>) -> String {
    let mut out = String::new();
    match kind {
        DumpKind::Ideal => {
            let gens = a.relations.generators();
            let _ = writeln!(out, "# relation ideal: {} generators", gens.len());
            for g in gens {
                let _ = writeln!(out, "{g}");
            }
        }
        DumpKind::Gb => {
            match &a.relations_basis {
                Some(gb) => {
                    let _ = writeln!(out, "# relation ideal basis: {} elements", gb.len());
                    let _ = write!(out, "{}", gb.dump());
                }
                None => out.push_str("# relation ideal basis: not computed\n"),
            }
            match &a.j {
                Some(j) => {
                    let _ = writeln!(out, "# J basis: {} elements", j.len());
                    let _ = write!(out, "{}", j.dump());
                }
                None => out.push_str("# J basis: not computed\n"),
            }
        }
        DumpKind::Traces => {
            let _ = writeln!(out, "# trace generators: {}", a.generators.len());
            for g in &a.generators {
                let _ = writeln!(out, "{g}\t{}", g.value);
            }
        }
        DumpKind::Sset => match &a.sset {
            Some(s) => {
                let _ = writeln!(
                    out,
                    "# irreducibility set: {} members, word length <= {}, {} tuples, {} evaluated",
                    s.len(),
                    s.length_bound,
                    s.raw_tuples,
                    s.evaluated_tuples
                );
                for (p, words) in s.polynomials.iter().zip(&s.provenance) {
                    let words: Vec<String> = words.iter().map(|w| WordDisplay(w).to_string()).collect();
                    let _ = writeln!(out, "{p}\t# ({})", words.join(", "));
                }
            }
            None => out.push_str("# irreducibility set: not computed\n"),
        },
        DumpKind::Algebra => match algebra {
            Some((d, report)) => {
                let _ = writeln!(out, "# algebra: dimension {}", d.dim());
                for (i, b) in d.basis().iter().enumerate() {
                    let _ = writeln!(out, "e{i} = {b}");
                }
                out.push_str("# structure constants: e_i * e_j = sum c_k e_k\n");
                for i in 0..d.dim() {
                    for j in i..d.dim() {
                        let c: Vec<String> = d.structure_constants(i, j).iter().map(|c| c.to_string()).collect();
                        let _ = writeln!(out, "e{i} * e{j} = [{}]", c.join(", "));
                    }
                }
                let _ = writeln!(out, "# gram matrix (rank {})", report.rank);
                if d.dim() > 0 {
                    let _ = writeln!(out, "{}", report.gram);
                }
            }
            None => out.push_str("# algebra: not computed\n"),
        },
    }
    out
}
