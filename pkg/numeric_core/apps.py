from django.apps import AppConfig


class NumericCoreConfig(AppConfig):
    name = 'numeric_core'
    verbose_name = 'Exact numeric core'
