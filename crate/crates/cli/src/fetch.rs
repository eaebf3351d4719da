//! Optional b-file download, used only with `--online`.

use std::path::Path;
use std::time::Duration;

use qetude::fixtures::{bfile_url, parse_bfile, store_bfile, Sequence};

pub enum FetchError {
    /// Could not retrieve the file; callers fall back to the vendored copy.
    Network(String),
    /// Retrieved, but not a valid b-file.
    Invalid(qetude::Error),
}

/// Downloads `id`, validates it, and stores it under `dir` when given.
/// `base` replaces `https://oeis.org` in the URL.
pub fn fetch_bfile(id: &str, base: Option<&str>, dir: Option<&Path>) -> Result<Sequence, FetchError> {
    let mut url = bfile_url(id).map_err(FetchError::Invalid)?;
    if let Some(b) = base {
        url = url.replacen("https://oeis.org", b.trim_end_matches('/'), 1);
    }
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(Duration::from_secs(20))).build().into();
    let text = agent
        .get(&url)
        .call()
        .and_then(|mut r| r.body_mut().read_to_string())
        .map_err(|e| FetchError::Network(format!("{url}: {e}")))?;
    match dir {
        Some(d) => store_bfile(d, id, &text),
        None => parse_bfile(id, &text),
    }
    .map_err(FetchError::Invalid)
}
