from django.apps import AppConfig


class LogmodConfig(AppConfig):
    name = 'logmod'
    verbose_name = 'Logarithmic derivation modules'
