from django.apps import AppConfig


class StirlingConfig(AppConfig):
    name = 'stirling'
    verbose_name = 'Stirling numbers of the second kind'
