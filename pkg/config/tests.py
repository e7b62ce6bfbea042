import tomllib

from django.conf import settings
from django.test import SimpleTestCase
from packaging.requirements import Requirement
from packaging.utils import canonicalize_name


def pins(lines):
    result = {}
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            requirement = Requirement(line)
            result[canonicalize_name(requirement.name)] = str(requirement.specifier)
    return result


class ManifestTest(SimpleTestCase):
    def setUp(self):
        with open(settings.BASE_DIR / "pyproject.toml", "rb") as f:
            self.project = pins(tomllib.load(f)["project"]["dependencies"])
        with open(settings.BASE_DIR / "requirements.txt") as f:
            self.requirements = pins(f)

    def test_manifests_list_the_same_pins(self):
        self.assertEqual(self.project, self.requirements)

    def test_deployment_packages_are_declared(self):
        for name in ("gunicorn", "psycopg2-binary", "whitenoise", "numpy", "scipy"):
            self.assertIn(name, self.project)
