//! Generator naming for the mapping-space models.
//!
//! `s{j}{v}` is the sphere suspension `s^j v`, `s{v}` the loop suspension,
//! `{v}_1`/`{v}_2` the two path copies, `s'{v}` the suspension of an outer
//! path factor.

pub const OUTER_PATH_PREFIX: &str = "s'";

pub fn sphere_name(v: &str, level: u32) -> String {
    format!("s{level}{v}")
}

pub fn loop_name(v: &str) -> String {
    format!("s{v}")
}

pub fn path_copy_name(v: &str, copy: u8) -> String {
    format!("{v}_{copy}")
}

pub fn outer_path_name(v: &str) -> String {
    format!("{OUTER_PATH_PREFIX}{v}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(sphere_name("x", 1), "s1x");
        assert_eq!(loop_name(&sphere_name("x", 1)), "ss1x");
        assert_eq!(path_copy_name("y", 2), "y_2");
        assert_eq!(outer_path_name("x"), "s'x");
    }
}
