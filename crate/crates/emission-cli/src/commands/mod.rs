//! One module per subcommand; each builds a [`crate::output::Table`] from
//! the resolved configuration.

pub mod angmom;
pub mod cyclotron;
pub mod density;
pub mod energy;
pub mod oracle;

use crate::output::Meta;
use emission_core::wwa::WwaScheme;

/// Common metadata entries for the detuning-window scheme.
fn scheme_meta(scheme: WwaScheme) -> Vec<(&'static str, Meta)> {
    let (lo, hi) = scheme.window();
    vec![
        (
            "scheme",
            Meta::Text(if scheme.is_pure() { "pure".into() } else { "modified".into() }),
        ),
        ("window_lower", Meta::Number(lo)),
        ("window_upper", Meta::Number(hi)),
    ]
}
