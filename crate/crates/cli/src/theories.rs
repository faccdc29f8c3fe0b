//! Theory files, including the ones shipped with the binary.

use std::path::Path;

use ppmod_core::theory::{parse_theory, Theory};

use crate::Failure;

/// `(file name, contents)` of the bundled theories.
pub const BUNDLED: [(&str, &str); 3] = [
    ("ex-lt6.thy", include_str!("../theories/ex-lt6.thy")),
    (
        "torsion-free.thy",
        include_str!("../theories/torsion-free.thy"),
    ),
    (
        "all-abelian.thy",
        include_str!("../theories/all-abelian.thy"),
    ),
];

/// A bundled theory by file name (any directory prefix is ignored).
pub fn bundled_theory(name: &str) -> Option<&'static str> {
    let file = Path::new(name).file_name()?.to_str()?;
    BUNDLED
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, text)| *text)
}

/// Reads `arg` from disk, falling back to a bundled theory of the same file
/// name.
pub fn load_theory(arg: &str) -> Result<Theory, Failure> {
    let text = match std::fs::read_to_string(arg) {
        Ok(text) => text,
        Err(io) => match bundled_theory(arg) {
            Some(text) => text.to_owned(),
            None => {
                return Err(Failure::Usage(format!(
                    "cannot read theory file `{arg}`: {io}"
                )))
            }
        },
    };
    Ok(parse_theory(&text)?)
}
