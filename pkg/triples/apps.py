from django.apps import AppConfig


class TriplesConfig(AppConfig):
    name = 'triples'
    verbose_name = 'Deletion-restriction triples'
