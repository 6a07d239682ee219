use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ncgb::kostant::{big_system, conjectural_system, small_system, ConjectureVariant, KostantPresentation};
use ncgb::{Alphabet, GeneratorSpec, Polynomial, PrimeField, RewritingSystem};
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Small,
    Big,
    Conjectural,
}

/// Where the presentation comes from.
#[derive(Debug, Clone, Args)]
pub struct PresentationArgs {
    /// A built-in family.
    #[arg(long, value_enum, conflicts_with = "file")]
    pub builtin: Option<Builtin>,
    /// A JSON presentation document.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Matrix size for `big` and `conjectural`.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Field characteristic for `big` and `conjectural`.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Index bound of the small system.
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Largest divided-power exponent of the big system.
    #[arg(long, default_value_t = 3)]
    pub expbound: u32,
    /// Index bound of a conjectural system.
    #[arg(long, default_value_t = 1)]
    pub index_bound: u32,
    /// Conjectural family: `odd_p_n3` or `p2_general_n`.
    #[arg(long, default_value = "odd_p_n3")]
    pub variant: String,
}

/// Parameters of a built-in family, as stored in documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuiltinSelector {
    pub kind: Builtin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetEntry {
    pub name: String,
    pub degree: u32,
    pub rank: i64,
}

/// A presentation file: generators, relations as `[coefficient, [names]]`
/// terms, and optionally the built-in family it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub p: u32,
    pub alphabet: Vec<AlphabetEntry>,
    pub relations: Vec<Vec<(i64, Vec<String>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinSelector>,
}

/// A loaded presentation: the system, plus the Kostant metadata when it
/// came from a built-in family.
pub struct Loaded {
    pub system: RewritingSystem,
    pub kostant: Option<KostantPresentation>,
    pub description: String,
}

impl Loaded {
    pub fn safe_degree(&self) -> Option<u32> {
        self.kostant.as_ref().map(KostantPresentation::safe_degree)
    }
}

impl PresentationArgs {
    /// Loads the presentation; `k` overrides the index bound of the small
    /// and conjectural families.
    pub fn load(&self, k: Option<u32>) -> Result<Loaded, Failure> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let doc: PresentationDocument = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            return doc.load(k);
        }
        let kind = self
            .builtin
            .ok_or_else(|| Failure::Usage("give --builtin or --file".into()))?;
        let sel = BuiltinSelector {
            kind,
            n: Some(self.n),
            l: Some(k.unwrap_or(self.l)),
            exponent_bound: Some(self.expbound),
            index_bound: Some(k.unwrap_or(self.index_bound)),
            variant: Some(self.variant.clone()),
        };
        build_builtin(&sel, self.p)
    }
}

fn build_builtin(sel: &BuiltinSelector, p: u32) -> Result<Loaded, Failure> {
    let pres = match sel.kind {
        Builtin::Small => small_system(sel.l.unwrap_or(1))?,
        Builtin::Big => big_system(sel.n.unwrap_or(3), p, sel.exponent_bound.unwrap_or(3))?,
        Builtin::Conjectural => {
            let variant: ConjectureVariant = sel.variant.as_deref().unwrap_or("odd_p_n3").parse()?;
            conjectural_system(variant, sel.n.unwrap_or(3), p, sel.index_bound.unwrap_or(1))?
        }
    };
    let description = match sel.kind {
        Builtin::Small => format!("small system, indices <= {}", sel.l.unwrap_or(1)),
        Builtin::Big => format!(
            "divided powers, n = {}, p = {p}, exponents <= {}",
            pres.n(),
            sel.exponent_bound.unwrap_or(3)
        ),
        Builtin::Conjectural => format!(
            "conjectural {}, n = {}, p = {p}, indices <= {} (experimental)",
            sel.variant.as_deref().unwrap_or("odd_p_n3"),
            pres.n(),
            sel.index_bound.unwrap_or(1)
        ),
    };
    Ok(Loaded {
        system: pres.system().clone(),
        kostant: Some(pres),
        description,
    })
}

impl PresentationDocument {
    /// A document listing the rules of `s` as relations `lhs - rhs`.
    pub fn from_system(s: &RewritingSystem, builtin: Option<BuiltinSelector>) -> Self {
        let a = s.alphabet();
        let field = s.field();
        let alphabet = a
            .specs()
            .into_iter()
            .map(|g| AlphabetEntry {
                name: g.name,
                degree: g.degree,
                rank: g.rank,
            })
            .collect();
        let names = |w: &ncgb::Word| w.letters().iter().map(|&l| a.name(l).to_string()).collect();
        let relations = s
            .rules()
            .iter()
            .map(|r| {
                r.relation()
                    .terms()
                    .iter()
                    .rev()
                    .map(|(w, &c)| (field.signed(c), names(w)))
                    .collect()
            })
            .collect();
        PresentationDocument {
            p: field.characteristic(),
            alphabet,
            relations,
            builtin,
        }
    }

    pub fn load(&self, k: Option<u32>) -> Result<Loaded, Failure> {
        if let Some(sel) = &self.builtin {
            let mut sel = sel.clone();
            if let Some(k) = k {
                sel.l = Some(k);
                sel.index_bound = Some(k);
            }
            return build_builtin(&sel, self.p);
        }
        let field = PrimeField::new(self.p)?;
        let alphabet = Alphabet::new(
            self.alphabet
                .iter()
                .map(|e| GeneratorSpec::new(e.name.clone(), e.degree, e.rank))
                .collect(),
        )?;
        let mut relations = Vec::new();
        for rel in &self.relations {
            let mut terms = Vec::new();
            for (c, names) in rel {
                terms.push((*c, alphabet.word(names)?));
            }
            relations.push(Polynomial::from_terms(&alphabet, field, terms));
        }
        let system = RewritingSystem::from_relations(&alphabet, field, &relations)?;
        Ok(Loaded {
            description: format!(
                "{} generators, {} relations over F_{}",
                self.alphabet.len(),
                system.len(),
                self.p
            ),
            system,
            kostant: None,
        })
    }
}
