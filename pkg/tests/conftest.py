import pytest

from lexsumm.corpus import RhetoricalRole, default_lexicons

from helpers import make_doc, make_lexicons


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture()
def small_lexicons():
    return make_lexicons(
        keywords=("mens rea", "bail"),
        statutes=("indian penal code",),
        stopwords=("the", "a", "of", "and", "is", "was"),
    )


@pytest.fixture()
def five_sentence_doc():
    """The hand-enumerated content fixture used across content/ilp tests."""
    return make_doc(
        "fixture5",
        [
            (
                "The appellant sought bail under Section 302 of the Indian Penal Code",
                RhetoricalRole.FACT,
            ),
            ("Ram Kumar vs. State of Bihar was cited by counsel", RhetoricalRole.PRECEDENT),
            ("The accused pleaded that mens rea was absent", RhetoricalRole.ARGUMENT),
            ("Section 307 was also invoked along with bail conditions", RhetoricalRole.STATUTE),
            ("The appeal is allowed", RhetoricalRole.FINAL_JUDGEMENT),
        ],
    )
