import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from ellreg.padic import PrecisionContext  # noqa: E402
from ellreg.reports import FieldSession  # noqa: E402
from ellreg.specfile import bundled_fields, load_field  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = bundled_fields()


def session(name, N=12, slack=2, ell=None):
    spec = load_field(name)
    return FieldSession(spec, PrecisionContext(ell or spec.ell, N, slack))


@pytest.fixture(params=FIELDS)
def field_session(request):
    return session(request.param)
