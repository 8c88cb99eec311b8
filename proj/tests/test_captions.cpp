#include "test_util.hpp"

#include "scarforge/captions.hpp"
#include "scarforge/scar_synth.hpp"

#include <doctest.h>

#include <map>

using namespace scarforge;
using testutil::error_kind;

TEST_CASE("published template instantiation") {
    const ScarSpec spec{{WallBase::Inferior, WallAxis::Septal}, Extent::Transmural, SliceLevel::Basal};
    ScriptedSource first_noun({0.0});
    const Caption c = generate_positive_caption(spec, first_noun);
    CHECK(c.text == "there is transmural delayed enhancement in inferoseptal wall. This image is from basal level.");
    CHECK(c.label == ClassLabel::Positive);
    CHECK(c.spec == spec);
    CHECK(first_noun.consumed() == 1);

    Rng a(5), b(5);
    CHECK(generate_positive_caption(spec, a).text == generate_positive_caption(spec, b).text);
}

TEST_CASE("negative captions") {
    ScriptedSource none({});
    const Caption basal = generate_negative_caption(SliceLevel::Basal, none);
    CHECK(basal.text == "there is no hyperenhancement in the myocardium. This image is from basal level.");
    CHECK(basal.label == ClassLabel::Negative);
    CHECK_FALSE(basal.spec);
    CHECK(none.consumed() == 0);
    CHECK(negative_caption(SliceLevel::Apical).text ==
          "there is no hyperenhancement in the myocardium. This image is from apical level.");
}

TEST_CASE("inference queries") {
    const auto q = inference_queries();
    CHECK(q.positive == "there is hyperenhancement in the myocardium");
    CHECK(q.negative == "there is no hyperenhancement in the myocardium");
    const auto m = inference_queries(SliceLevel::Mid);
    CHECK(m.positive == "there is hyperenhancement in the myocardium. This image is from mid level.");
    CHECK(m.negative == "there is no hyperenhancement in the myocardium. This image is from mid level.");
    CHECK(inference_queries().positive == q.positive);
}

TEST_CASE("round trip over every spec and synonym") {
    const std::optional<WallBase> bases[] = {std::nullopt, WallBase::Anterior, WallBase::Inferior,
                                             WallBase::Posterior};
    const std::optional<WallAxis> axes[] = {std::nullopt, WallAxis::Lateral, WallAxis::Septal};
    std::size_t checked = 0;
    for (auto b : bases)
        for (auto a : axes) {
            if (!b && !a)
                continue;
            for (Extent e : kAllExtents)
                for (SliceLevel l : kAllLevels)
                    for (std::size_t noun = 0; noun < kEnhancementSynonyms.size(); ++noun) {
                        const ScarSpec spec{{b, a}, e, l};
                        const std::string text = render_positive_caption(spec, noun);
                        const ParsedCaption parsed = parse_caption(text);
                        REQUIRE(std::holds_alternative<ScarSpec>(parsed));
                        CHECK(std::get<ScarSpec>(parsed) == spec);
                        ++checked;
                    }
        }
    CHECK(checked == 11 * 4 * 3 * 5);
    for (SliceLevel l : kAllLevels) {
        CHECK(parse_caption(negative_caption(l).text) == ParsedCaption{NegativeMarker{l}});
        CHECK(parse_caption(inference_queries(l).positive) == ParsedCaption{GenericPositiveMarker{l}});
    }
}

TEST_CASE("parse errors") {
    CHECK(error_kind([] { parse_caption("there is hyperenhancement"); }) == ErrorKind::Parse);
    CHECK(error_kind([] { parse_caption("there is hyperenhancement in the myocardium"); }) == ErrorKind::Parse);
    CHECK(error_kind([] {
              parse_caption("there is transmural scar in septolateral wall. This image is from mid level.");
          }) == ErrorKind::Parse);
    CHECK(error_kind([] {
              parse_caption("there is transmural scar in lateral wall. This image is from mid level. ");
          }) == ErrorKind::Parse);
    CHECK(error_kind([] {
              parse_caption("there is transmural scar in lateral wall. This image is from top level.");
          }) == ErrorKind::Parse);
    try {
        parse_caption("there is sideways scar in lateral wall. This image is from mid level.");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("offset 9") != std::string::npos);
    }
}

TEST_CASE("class label strings") {
    CHECK(class_label_from_string("positive") == ClassLabel::Positive);
    CHECK(class_label_from_string("0") == ClassLabel::Negative);
    CHECK_FALSE(class_label_from_string("maybe"));
    CHECK(to_string(ClassLabel::Positive) == "positive");
}

TEST_CASE("synonym frequencies") {
    Rng rng(2024);
    const ScarSpec spec{{WallBase::Anterior, std::nullopt}, Extent::Epicardial, SliceLevel::Mid};
    std::map<std::string, int> counts;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const std::string t = generate_positive_caption(spec, rng).text;
        for (auto noun : kEnhancementSynonyms)
            if (t.find(std::string(" ") + std::string(noun) + " in ") != std::string::npos)
                ++counts[std::string(noun)];
    }
    CHECK(counts.size() == 5);
    for (const auto& [noun, c] : counts) {
        CHECK_MESSAGE(c >= 0.18 * n, noun);
        CHECK_MESSAGE(c <= 0.22 * n, noun);
    }
}
