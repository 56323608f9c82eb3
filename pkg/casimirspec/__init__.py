"""casimirspec - broadband permittivity reconstruction from Casimir force curves."""

__version__ = "0.3.1"
__app_name__ = "casimirspec"
