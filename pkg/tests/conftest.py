import pytest

from nkpolicy import MatrixVariant, ModelParams


@pytest.fixture
def text_params():
    return ModelParams(variant=MatrixVariant.TEXT)


@pytest.fixture
def appa_params():
    return ModelParams(variant=MatrixVariant.APPENDIX_A)
