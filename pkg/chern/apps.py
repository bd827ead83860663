from django.apps import AppConfig


class ChernConfig(AppConfig):
    name = 'chern'
    verbose_name = 'Chern bookkeeping'
