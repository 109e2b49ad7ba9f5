/// Splits `text` into lowercase alphanumeric words numbered from 0.
pub fn tokenize(text: &str) -> Vec<(String, u32)> {
    words(text).enumerate().map(|(i, w)| (w, i as u32)).collect()
}

pub(crate) fn words(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
}
