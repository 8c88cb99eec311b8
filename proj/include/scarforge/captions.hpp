#pragma once

#include "scarforge/anatomy.hpp"
#include "scarforge/rng.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace scarforge {

enum class ClassLabel { Negative, Positive };

std::string_view to_string(ClassLabel label) noexcept;
std::optional<ClassLabel> class_label_from_string(std::string_view s);

/// Enhancement nouns used interchangeably in positive captions.
inline constexpr std::array<std::string_view, 5> kEnhancementSynonyms{
    "delayed enhancement", "delayed hyperenhancement", "late enhancement", "scar", "infarct"};

struct Caption {
    std::string text;
    ClassLabel label = ClassLabel::Negative;
    SliceLevel level = SliceLevel::Mid;
    std::optional<ScarSpec> spec; // present iff label is positive and synthetic
};

/// "This image is from <level> level."
std::string slice_suffix(SliceLevel level);

/// "<sentence>. This image is from <level> level."
std::string with_slice_suffix(std::string_view sentence, SliceLevel level);

/// "there is <extent> <noun> in <location> wall. This image is from <level> level."
/// The noun is drawn uniformly from kEnhancementSynonyms (one draw).
Caption generate_positive_caption(const ScarSpec& spec, UniformSource& rng);
std::string render_positive_caption(const ScarSpec& spec, std::size_t synonym_index);

/// "there is no hyperenhancement in the myocardium. This image is from <level> level."
/// Consumes no draws.
Caption generate_negative_caption(SliceLevel level, UniformSource& rng);
Caption negative_caption(SliceLevel level);

struct InferenceQueries {
    std::string positive;
    std::string negative;
};

/// The two zero-shot class prompts, without the slice suffix.
InferenceQueries inference_queries();
InferenceQueries inference_queries(SliceLevel level);

struct NegativeMarker {
    SliceLevel level;
    friend bool operator==(const NegativeMarker&, const NegativeMarker&) = default;
};

/// The suffixed positive inference query; used for real LGE-positive slices
/// that carry no synthetic scar description.
struct GenericPositiveMarker {
    SliceLevel level;
    friend bool operator==(const GenericPositiveMarker&, const GenericPositiveMarker&) = default;
};

using ParsedCaption = std::variant<ScarSpec, NegativeMarker, GenericPositiveMarker>;

/// Inverse of the caption grammar. Throws Error(Parse) naming the byte offset
/// of the first mismatch.
ParsedCaption parse_caption(std::string_view text);

} // namespace scarforge
