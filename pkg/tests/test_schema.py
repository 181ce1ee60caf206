import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture_candidates
from discsum.discourse import TAXONOMY, Relation
from discsum.schema import (
    DEFAULT_SCHEMAS,
    Quantifier,
    QuestionType,
    SchemaConfigError,
    SchemaParseError,
    SchemaUnsatisfiable,
    Slot,
    classify_question,
    fill_schema,
    load_schemas,
    matches,
    parse_schema,
    select_schema,
    slot_kinds,
)

R = Relation
REASON = "(topic-opinion/attribution)+ (contingency/comparison)* (attributive)*"


def test_parse_reason_schema():
    s = parse_schema(REASON)
    assert s.slots == (
        Slot(frozenset({R.TOPIC_OPINION, R.ATTRIBUTION}), Quantifier.PLUS),
        Slot(frozenset({R.CONTINGENCY, R.COMPARISON}), Quantifier.STAR),
        Slot(frozenset({R.ATTRIBUTIVE}), Quantifier.STAR),
    )


def test_parse_optional_and_bare():
    assert parse_schema("{comparison}").slots == (Slot(frozenset({R.COMPARISON}), Quantifier.OPTIONAL),)
    assert parse_schema("illustration").slots == (Slot(frozenset({R.ILLUSTRATION}), Quantifier.ONE),)


def test_nested_quantifiers_compose():
    assert parse_schema("{illustration}+").slots[0].quantifier is Quantifier.STAR
    assert parse_schema("{illustration*}").slots[0].quantifier is Quantifier.STAR


@pytest.mark.parametrize("src, pos", [
    ("(contingency/banana)", 13),
    ("*", 0),
    ("", 0),
    ("(contingency/)", 13),
    ("(contingency", 12),
])
def test_parse_errors_carry_position(src, pos):
    with pytest.raises(SchemaParseError) as err:
        parse_schema(src)
    assert err.value.position == pos


def test_parse_error_names_the_bad_relation():
    with pytest.raises(SchemaParseError, match="banana"):
        parse_schema("(contingency/banana)")


@pytest.mark.parametrize("schema", DEFAULT_SCHEMAS, ids=lambda s: s.name)
def test_expression_round_trip(schema):
    assert parse_schema(schema.expression).slots == schema.slots


def test_matches_examples():
    s = parse_schema(REASON)
    assert matches(s, [R.TOPIC_OPINION])
    assert not matches(s, [R.CONTINGENCY])
    assert matches(s, [R.ATTRIBUTION, R.TOPIC_OPINION, R.COMPARISON, R.ATTRIBUTIVE, R.ATTRIBUTIVE])
    assert not matches(s, [])
    assert not matches(s, [R.TOPIC_OPINION, R.ATTRIBUTIVE, R.COMPARISON])


def test_matches_optional_and_one():
    s = parse_schema("{comparison} contingency")
    assert matches(s, [R.CONTINGENCY])
    assert matches(s, [R.COMPARISON, R.CONTINGENCY])
    assert not matches(s, [R.COMPARISON, R.COMPARISON, R.CONTINGENCY])


@pytest.mark.parametrize("question, qtype", [
    ("Why do people like Picasa?", QuestionType.REASON),
    ("What features do people like about Windows Vista?", QuestionType.OPINION_ATTRIBUTE),
    ("What do people think of Zillow?", QuestionType.OPINION_ATTRIBUTE),
    ("Should I buy a hybrid car?", QuestionType.SUGGESTION),
    ("How can I improve battery life?", QuestionType.SUGGESTION),
    ("Who founded Starbucks?", QuestionType.OTHER),
    ("", QuestionType.OTHER),
])
def test_classify_question(question, qtype):
    assert classify_question(question) is qtype


@given(st.text())
def test_classification_is_total(question):
    assert isinstance(classify_question(question), QuestionType)


def test_select_schema():
    assert select_schema(QuestionType.REASON).expression == REASON
    assert select_schema(QuestionType.OTHER).name == "other"
    with pytest.raises(SchemaConfigError):
        select_schema(QuestionType.REASON, [])


def test_load_schemas(tmp_path):
    p = tmp_path / "s.tsv"
    p.write_text("# custom\nwhy\treason\t(contingency)+\n")
    [s] = load_schemas(p)
    assert s.name == "why"
    assert s.question_type is QuestionType.REASON


def test_fill_single_slot_saturation():
    cands, tags = fixture_candidates([(3, [R.CONTINGENCY])] * 4)
    summary = fill_schema(parse_schema("(contingency)+"), cands, tags, 1000)
    assert summary.sentence_ids == [c.sentence.id for c in cands]
    assert summary.provenance == (0, 0, 0, 0)


def test_fill_unsatisfiable():
    cands, tags = fixture_candidates([(3, [R.CONTINGENCY]), (3, [R.COMPARISON])])
    with pytest.raises(SchemaUnsatisfiable):
        fill_schema(parse_schema(REASON), cands, tags, 250)


def test_fill_hand_trace():
    # budget 30; pass 1 puts s:2 in slot 0 (8 words)
    cands, tags = fixture_candidates([
        (12, [R.CONTINGENCY]),    # pass 2, slot 1: 13 + 12 = 25
        (10, [R.ATTRIBUTIVE]),    # slot 2: 35 > 30, skipped
        (8, [R.ATTRIBUTION]),
        (6, [R.ATTRIBUTIVE]),     # slot 2: 31 > 30, skipped
        (5, [R.TOPIC_OPINION]),   # pass 2, slot 0: 8 + 5 = 13
    ])
    summary = fill_schema(parse_schema(REASON), cands, tags, 30)
    assert summary.sentence_ids == ["s:2", "s:4", "s:0"]
    assert summary.provenance == (0, 0, 1)
    assert summary.word_count == 25


def test_pass_one_protects_later_mandatory_slots():
    cands, tags = fixture_candidates([(5, [R.ILLUSTRATION])] * 3 + [(5, [R.CONTINGENCY])])
    summary = fill_schema(parse_schema("(illustration)* (contingency)+"), cands, tags, 10)
    assert summary.sentence_ids == ["s:0", "s:3"]


def test_budget_must_be_positive():
    cands, tags = fixture_candidates([(3, [R.CONTINGENCY])])
    with pytest.raises(ValueError):
        fill_schema(parse_schema("(contingency)+"), cands, tags, 0)


kinds = st.sets(st.sampled_from(TAXONOMY), min_size=1, max_size=3)
fixtures = st.lists(st.tuples(st.integers(1, 15), kinds), min_size=1, max_size=8)


@given(fixtures, st.integers(1, 60), st.sampled_from(DEFAULT_SCHEMAS))
def test_fill_invariants(specs, budget, schema):
    cands, tags = fixture_candidates(specs)
    try:
        summary = fill_schema(schema, cands, tags, budget)
    except SchemaUnsatisfiable:
        return
    assert summary.word_count <= budget
    assert len(set(summary.sentence_ids)) == len(summary.sentence_ids)
    assert matches(schema, slot_kinds(schema, summary, tags))
    assert list(summary.provenance) == sorted(summary.provenance)
    assert summary == fill_schema(schema, cands, tags, budget)


@given(fixtures, st.integers(1, 60), st.sampled_from(TAXONOMY))
def test_fill_exclusion_soundness(specs, budget, excluded):
    cands, tags = fixture_candidates(specs)
    kept = [c for c in cands if excluded not in tags[c.sentence.id]]
    try:
        summary = fill_schema(DEFAULT_SCHEMAS[-1], kept, tags, budget)
    except SchemaUnsatisfiable:
        return
    assert all(excluded not in tags[sid] for sid in summary.sentence_ids)


def test_quantifier_bounds():
    assert Quantifier.ONE.bounds == (1, 1)
    assert Quantifier.OPTIONAL.bounds == (0, 1)
    assert Quantifier.STAR.bounds == (0, math.inf)
    assert Quantifier.PLUS.bounds == (1, math.inf)
