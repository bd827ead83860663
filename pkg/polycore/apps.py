from django.apps import AppConfig


class PolycoreConfig(AppConfig):
    name = 'polycore'
    verbose_name = 'Exact polynomial arithmetic'
