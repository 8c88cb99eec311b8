#include "scarforge/captions.hpp"

#include "scarforge/errors.hpp"

#include <algorithm>

namespace scarforge {

namespace {

constexpr std::string_view kPositiveQuery = "there is hyperenhancement in the myocardium";
constexpr std::string_view kNegativeQuery = "there is no hyperenhancement in the myocardium";

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool accept(std::string_view lit) {
        if (text_.substr(pos_).starts_with(lit)) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view lit) {
        if (!accept(lit))
            error("expected \"" + std::string(lit) + "\"");
    }

    /// Longest alternative that matches at the cursor.
    template <typename Range>
    std::optional<std::size_t> accept_one_of(const Range& alternatives) {
        std::optional<std::size_t> best;
        std::size_t best_len = 0;
        std::size_t i = 0;
        for (std::string_view alt : alternatives) {
            if (alt.size() > best_len && text_.substr(pos_).starts_with(alt)) {
                best = i;
                best_len = alt.size();
            }
            ++i;
        }
        if (best)
            pos_ += best_len;
        return best;
    }

    /// Characters up to (not including) `delim`.
    std::string_view until(std::string_view delim) {
        auto end = text_.find(delim, pos_);
        if (end == std::string_view::npos)
            error("expected \"" + std::string(delim) + "\"");
        auto word = text_.substr(pos_, end - pos_);
        pos_ = end;
        return word;
    }

    bool at_end() const { return pos_ == text_.size(); }
    std::size_t position() const { return pos_; }

    [[noreturn]] void error(const std::string& what) const { error_at(pos_, what); }

    [[noreturn]] void error_at(std::size_t pos, const std::string& what) const {
        fail(ErrorKind::Parse, "caption parse error at offset " + std::to_string(pos) + ": " + what);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

SliceLevel parse_suffix(Cursor& cur) {
    cur.expect(" This image is from ");
    const std::size_t at = cur.position();
    auto word = cur.until(" level.");
    auto level = slice_level_from_string(word);
    if (!level)
        cur.error_at(at, "unknown slice level \"" + std::string(word) + "\"");
    cur.expect(" level.");
    if (!cur.at_end())
        cur.error("trailing text after slice suffix");
    return *level;
}

} // namespace

std::string_view to_string(ClassLabel label) noexcept {
    return label == ClassLabel::Positive ? "positive" : "negative";
}

std::optional<ClassLabel> class_label_from_string(std::string_view s) {
    if (s == "positive" || s == "1")
        return ClassLabel::Positive;
    if (s == "negative" || s == "0")
        return ClassLabel::Negative;
    return std::nullopt;
}

std::string slice_suffix(SliceLevel level) {
    return "This image is from " + std::string(to_string(level)) + " level.";
}

std::string with_slice_suffix(std::string_view sentence, SliceLevel level) {
    return std::string(sentence) + ". " + slice_suffix(level);
}

std::string render_positive_caption(const ScarSpec& spec, std::size_t synonym_index) {
    if (synonym_index >= kEnhancementSynonyms.size())
        fail(ErrorKind::Argument, "synonym index out of range");
    std::string sentence = "there is ";
    sentence += to_string(spec.extent);
    sentence += ' ';
    sentence += kEnhancementSynonyms[synonym_index];
    sentence += " in ";
    sentence += spec.location.token();
    sentence += " wall";
    return with_slice_suffix(sentence, spec.level);
}

Caption generate_positive_caption(const ScarSpec& spec, UniformSource& rng) {
    const std::size_t noun = rng.index(kEnhancementSynonyms.size());
    return {render_positive_caption(spec, noun), ClassLabel::Positive, spec.level, spec};
}

Caption negative_caption(SliceLevel level) {
    return {with_slice_suffix(kNegativeQuery, level), ClassLabel::Negative, level, std::nullopt};
}

Caption generate_negative_caption(SliceLevel level, UniformSource&) {
    return negative_caption(level);
}

InferenceQueries inference_queries() {
    return {std::string(kPositiveQuery), std::string(kNegativeQuery)};
}

InferenceQueries inference_queries(SliceLevel level) {
    return {with_slice_suffix(kPositiveQuery, level), with_slice_suffix(kNegativeQuery, level)};
}

ParsedCaption parse_caption(std::string_view text) {
    Cursor cur(text);
    cur.expect("there is ");
    if (cur.accept("no hyperenhancement in the myocardium."))
        return NegativeMarker{parse_suffix(cur)};
    if (cur.accept("hyperenhancement in the myocardium."))
        return GenericPositiveMarker{parse_suffix(cur)};

    std::array<std::string_view, std::size(kAllExtents)> extent_words{};
    std::transform(std::begin(kAllExtents), std::end(kAllExtents), extent_words.begin(),
                   [](Extent e) { return to_string(e); });
    auto extent = cur.accept_one_of(extent_words);
    if (!extent)
        cur.error("expected a scar extent or \"no hyperenhancement\"");
    cur.expect(" ");
    if (!cur.accept_one_of(kEnhancementSynonyms))
        cur.error("expected an enhancement noun");
    cur.expect(" in ");
    const std::size_t at = cur.position();
    auto token = cur.until(" wall.");
    auto location = WallLocation::from_token(token);
    if (!location)
        cur.error_at(at, "unknown wall location \"" + std::string(token) + "\"");
    cur.expect(" wall.");
    const SliceLevel level = parse_suffix(cur);
    return ScarSpec{*location, kAllExtents[*extent], level};
}

} // namespace scarforge
