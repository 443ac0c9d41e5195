import pytest

from kpiforge.dataset import load_csv
from kpiforge.kpi import fixture_csv_path


@pytest.fixture(scope="session")
def students():
    """The bundled synthetic 50-student dataset."""
    return load_csv(fixture_csv_path().read_bytes(), "students")


@pytest.fixture()
def tiny_csv():
    return (
        "Course,State,CGPA,Backlogs\n"
        "B.Tech,Punjab,8.1,0\n"
        "M.Tech,Delhi,7.5,2\n"
        "M.Tech,Punjab,6.9,1\n"
        "B.Tech,Delhi,,3\n"
    )
