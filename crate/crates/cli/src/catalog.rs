//! Named groups: the built-in catalog and the catalog file format.

use thiserror::Error;

use sylowlab_core::families::{self, FamilyError};
use sylowlab_core::perm::{parse_cycles, PermError};
use sylowlab_core::PermGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("bad builtin spec {spec:?}: {msg}")]
    BadSpec { spec: String, msg: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("line {line}: {msg}")]
    File { line: usize, msg: String },
    #[error("line {line}: duplicate name {name:?}")]
    DuplicateName { line: usize, name: String },
    #[error("group {name:?} has order {actual}, expected {expected}")]
    OrderMismatch {
        name: String,
        actual: u64,
        expected: u64,
    },
    #[error("{name:?}: {err}")]
    Generator { name: String, err: PermError },
}

/// One named group: generators in cycle notation at an explicit degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub expected_order: Option<u64>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<PermGroup, CatalogError> {
        let mut gens = Vec::new();
        for text in &self.generators {
            let p = parse_cycles(text, self.degree).map_err(|err| CatalogError::Generator {
                name: self.name.clone(),
                err,
            })?;
            gens.push(p);
        }
        let group = PermGroup::new(self.degree, gens).map_err(|e| CatalogError::File {
            line: 0,
            msg: e.to_string(),
        })?;
        if let Some(expected) = self.expected_order {
            let actual = group.order();
            if actual != expected {
                return Err(CatalogError::OrderMismatch {
                    name: self.name.clone(),
                    actual,
                    expected,
                });
            }
        }
        Ok(group)
    }

    fn from_group(name: &str, group: &PermGroup, expected_order: u64) -> CatalogEntry {
        CatalogEntry {
            name: name.to_string(),
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
            expected_order: Some(expected_order),
        }
    }
}

/// Builds a group from a family spec such as `cyclic(6)`, `dihedral(7)`,
/// `elementary_abelian(3,2)`, `direct_product(cyclic(3),alternating(4))` or
/// `dodecahedral`.
pub fn builtin(spec: &str) -> Result<PermGroup, CatalogError> {
    let spec = spec.trim();
    let (name, args) = split_spec(spec)?;
    let bad = |msg: &str| CatalogError::BadSpec {
        spec: spec.to_string(),
        msg: msg.to_string(),
    };
    let int_arg = |idx: usize| -> Result<usize, CatalogError> {
        args.get(idx)
            .ok_or_else(|| bad("missing parameter"))?
            .trim()
            .parse::<usize>()
            .map_err(|_| bad("parameters must be integers"))
    };
    match name {
        "cyclic" | "dihedral" | "symmetric" | "alternating" => {
            if args.len() != 1 {
                return Err(bad("expected one parameter"));
            }
            let n = int_arg(0)?;
            match name {
                "cyclic" => {
                    if n > 100_000 {
                        return Err(bad("cyclic degree capped at 100000"));
                    }
                    Ok(families::cyclic(n)?)
                }
                "dihedral" => {
                    if n > 100_000 {
                        return Err(bad("dihedral degree capped at 100000"));
                    }
                    Ok(families::dihedral(n)?)
                }
                "symmetric" => {
                    if n > 20 {
                        return Err(bad("symmetric degree capped at 20 (order fits in 64 bits)"));
                    }
                    Ok(families::symmetric(n)?)
                }
                "alternating" => {
                    if n > 20 {
                        return Err(bad("alternating degree capped at 20 (order fits in 64 bits)"));
                    }
                    Ok(families::alternating(n)?)
                }
                _ => unreachable!(),
            }
        }
        "elementary_abelian" => {
            if args.len() != 2 {
                return Err(bad("expected two parameters: prime, rank"));
            }
            let p = int_arg(0)?;
            let k = int_arg(1)?;
            if p.saturating_mul(k) > 10_000 {
                return Err(bad("elementary abelian degree capped at 10000"));
            }
            Ok(families::elementary_abelian(p, k)?)
        }
        "direct_product" => {
            if args.len() != 2 {
                return Err(bad("expected two factor specs"));
            }
            let a = builtin(&args[0])?;
            let b = builtin(&args[1])?;
            Ok(families::direct_product(&a, &b))
        }
        "dodecahedral" => {
            if !args.is_empty() {
                return Err(bad("dodecahedral takes no parameters"));
            }
            Ok(families::dodecahedral())
        }
        other => Err(CatalogError::UnknownFamily(other.to_string())),
    }
}

/// Splits `name(args)` into the name and top-level comma-separated args.
fn split_spec(spec: &str) -> Result<(&str, Vec<String>), CatalogError> {
    let bad = |msg: &str| CatalogError::BadSpec {
        spec: spec.to_string(),
        msg: msg.to_string(),
    };
    match spec.find('(') {
        None => {
            if spec.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !spec.is_empty() {
                Ok((spec, Vec::new()))
            } else {
                Err(bad("malformed family name"))
            }
        }
        Some(open) => {
            if !spec.ends_with(')') {
                return Err(bad("missing closing parenthesis"));
            }
            let name = spec[..open].trim();
            let inner = &spec[open + 1..spec.len() - 1];
            let mut args = Vec::new();
            let mut depth = 0usize;
            let mut current = String::new();
            for c in inner.chars() {
                match c {
                    '(' => {
                        depth += 1;
                        current.push(c);
                    }
                    ')' => {
                        depth = depth.checked_sub(1).ok_or_else(|| bad("unbalanced parentheses"))?;
                        current.push(c);
                    }
                    ',' if depth == 0 => {
                        args.push(current.trim().to_string());
                        current.clear();
                    }
                    _ => current.push(c),
                }
            }
            if depth != 0 {
                return Err(bad("unbalanced parentheses"));
            }
            if !current.trim().is_empty() {
                args.push(current.trim().to_string());
            }
            Ok((name, args))
        }
    }
}

/// The built-in catalog: 37 groups spanning orders 1 to 7200, every one
/// order-checked on construction.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let specs: &[(&str, u64)] = &[
        ("cyclic(1)", 1),
        ("cyclic(2)", 2),
        ("cyclic(3)", 3),
        ("cyclic(6)", 6),
        ("cyclic(9)", 9),
        ("cyclic(12)", 12),
        ("cyclic(100)", 100),
        ("cyclic(255)", 255),
        ("cyclic(512)", 512),
        ("dihedral(3)", 6),
        ("dihedral(5)", 10),
        ("dihedral(7)", 14),
        ("dihedral(12)", 24),
        ("dihedral(15)", 30),
        ("dihedral(17)", 34),
        ("dihedral(51)", 102),
        ("dihedral(999)", 1998),
        ("symmetric(3)", 6),
        ("symmetric(4)", 24),
        ("symmetric(5)", 120),
        ("symmetric(6)", 720),
        ("symmetric(7)", 5040),
        ("alternating(4)", 12),
        ("alternating(5)", 60),
        ("alternating(6)", 360),
        ("alternating(7)", 2520),
        ("dodecahedral", 120),
        ("elementary_abelian(2,3)", 8),
        ("elementary_abelian(3,2)", 9),
        ("elementary_abelian(5,2)", 25),
        ("direct_product(cyclic(3),alternating(4))", 36),
        ("direct_product(cyclic(4),cyclic(2))", 8),
        ("direct_product(symmetric(3),cyclic(3))", 18),
        ("direct_product(alternating(4),cyclic(2))", 24),
        ("direct_product(symmetric(4),symmetric(3))", 144),
        ("direct_product(symmetric(4),symmetric(4))", 576),
        ("direct_product(alternating(5),symmetric(5))", 7200),
    ];
    specs
        .iter()
        .map(|(spec, order)| {
            let group = builtin(spec).expect("standard catalog specs are valid");
            CatalogEntry::from_group(spec, &group, *order)
        })
        .collect()
}

/// Parses a catalog file. Line format:
/// `name ; degree ; gen1 , gen2 , ... [; expected_order]`
/// with `#` comments and blank lines ignored. Cycle separators inside a
/// generator are spaces, so the commas between generators are unambiguous.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(CatalogError::File {
                line: line_no,
                msg: format!(
                    "expected `name ; degree ; generators [; order]`, found {} fields",
                    fields.len()
                ),
            });
        }
        let name = fields[0].to_string();
        if name.is_empty() {
            return Err(CatalogError::File {
                line: line_no,
                msg: "empty group name".into(),
            });
        }
        if entries.iter().any(|e| e.name == name) {
            return Err(CatalogError::DuplicateName { line: line_no, name });
        }
        let degree: usize = fields[1].parse().map_err(|_| CatalogError::File {
            line: line_no,
            msg: format!("degree {:?} is not a positive integer", fields[1]),
        })?;
        if degree == 0 {
            return Err(CatalogError::File {
                line: line_no,
                msg: "degree must be positive".into(),
            });
        }
        let generators: Vec<String> = if fields[2].is_empty() {
            Vec::new()
        } else {
            fields[2].split(',').map(|s| s.trim().to_string()).collect()
        };
        let expected_order = match fields.get(3) {
            None => None,
            Some(text) => Some(text.parse::<u64>().map_err(|_| CatalogError::File {
                line: line_no,
                msg: format!("order {text:?} is not a positive integer"),
            })?),
        };
        let entry = CatalogEntry {
            name,
            degree,
            generators,
            expected_order,
        };
        // validate now so errors carry the line number
        entry.build().map_err(|e| match e {
            CatalogError::OrderMismatch { .. } => e,
            CatalogError::Generator { name, err } => CatalogError::File {
                line: line_no,
                msg: format!("{name}: {err}"),
            },
            other => CatalogError::File {
                line: line_no,
                msg: other.to_string(),
            },
        })?;
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs() {
        assert_eq!(builtin("cyclic(6)").unwrap().order(), 6);
        assert_eq!(builtin("dihedral(7)").unwrap().order(), 14);
        assert_eq!(builtin("dodecahedral").unwrap().order(), 120);
        assert_eq!(builtin(" symmetric( 4 ) ").unwrap().order(), 24);
        assert_eq!(builtin("elementary_abelian(3,2)").unwrap().order(), 9);
        assert_eq!(
            builtin("direct_product(cyclic(3),alternating(4))")
                .unwrap()
                .order(),
            36
        );
        assert_eq!(
            builtin("direct_product(direct_product(cyclic(2),cyclic(3)),cyclic(5))")
                .unwrap()
                .order(),
            30
        );
    }

    #[test]
    fn builtin_rejects_bad_specs() {
        assert!(matches!(builtin("frobenius(20)"), Err(CatalogError::UnknownFamily(_))));
        assert!(builtin("cyclic").is_err());
        assert!(builtin("cyclic(0)").is_err());
        assert!(builtin("cyclic(6").is_err());
        assert!(builtin("symmetric(21)").is_err());
        assert!(builtin("direct_product(cyclic(2))").is_err());
        assert!(builtin("dodecahedral(2)").is_err());
    }

    #[test]
    fn standard_catalog_is_consistent() {
        let catalog = standard_catalog();
        assert!(catalog.len() >= 25);
        let max = catalog
            .iter()
            .map(|e| e.expected_order.unwrap())
            .max()
            .unwrap();
        assert!(max <= 10_000);
        assert!(max >= 5_000, "catalog should span up to the order cap");
        for entry in &catalog {
            let g = entry.build().unwrap();
            assert_eq!(Some(g.order()), entry.expected_order, "{}", entry.name);
        }
    }

    #[test]
    fn parse_catalog_round_trip() {
        let text = "\
# a comment
D7 ; 7 ; (1 2 3 4 5 6 7) , (2 7)(3 6)(4 5) ; 14
K4 ; 4 ; (1 2)(3 4) , (1 3)(2 4)
T1 ; 1 ;  # the trivial group
";
        let entries = parse_catalog(text).unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[0].build().unwrap().order(), 14);
        assert_eq!(entries[1].build().unwrap().order(), 4);
        assert_eq!(entries[2].build().unwrap().order(), 1);
    }

    #[test]
    fn parse_catalog_reports_line_numbers() {
        let err = parse_catalog("X ; 3 ; (1 2 3 4)").unwrap_err();
        match err {
            CatalogError::File { line: 1, msg } => assert!(msg.contains("exceeds degree")),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_catalog("A ; 3 ; (1 2 3)\nA ; 3 ; (1 2 3)").unwrap_err();
        assert!(matches!(err, CatalogError::DuplicateName { line: 2, .. }));
        let err = parse_catalog("D7 ; 7 ; (1 2 3 4 5 6 7) ; 15").unwrap_err();
        assert!(matches!(err, CatalogError::OrderMismatch { expected: 15, actual: 7, .. }));
    }

    #[test]
    fn empty_catalog_file() {
        assert!(parse_catalog("").unwrap().is_empty());
        assert!(parse_catalog("# only comments\n\n").unwrap().is_empty());
    }
}
