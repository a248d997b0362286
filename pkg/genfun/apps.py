from django.apps import AppConfig


class GenfunConfig(AppConfig):
    name = 'genfun'
    verbose_name = 'Generating functions'
