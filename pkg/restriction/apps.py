from django.apps import AppConfig


class RestrictionConfig(AppConfig):
    name = 'restriction'
    verbose_name = 'Restriction to lines'
